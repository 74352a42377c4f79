"""Bottom-up pools, observational-equivalence pruning, and schema filling."""

from itertools import combinations, permutations

import pytest

from diagforge.interp import evaluate
from diagforge.kernel import Sort, parse, pretty, size
from diagforge.synthesis import (
    Candidate,
    ComponentFact,
    GoalSpec,
    PIVOT_COMBINE_PROBES,
    PIVOT_PRED_PROBES,
    ReflectionBase,
    ResultElemOfArg,
    SCHEMA_BOTTOM_UP,
    SCHEMA_PIVOT_DC,
    StrictOrderPredicate,
    bottom_up_pool,
    default_list_base,
    default_nat_base,
    fact,
    fill_schema_holes,
    make_goal,
    parse_goal_text,
    synthesize,
)
from oracles import all_nat_terms, eval_nat, insertion_sort


def test_component_facts_check_against_kernel_typing():
    lt = fact("lt", StrictOrderPredicate())
    assert lt.arg_sorts == (Sort.NAT, Sort.NAT) and lt.result_sort is Sort.BOOL
    first = fact("first", ResultElemOfArg(0))
    assert ResultElemOfArg(0) in first.refinements
    with pytest.raises(ValueError):
        ComponentFact("succ", (Sort.LIST_NAT,), Sort.NAT)
    with pytest.raises(ValueError):
        ComponentFact("n", (), Sort.NAT)
    with pytest.raises(ValueError):
        ReflectionBase(components=(), literals=())


def test_pool_of_the_nat_base_at_size_2():
    pool = bottom_up_pool(default_nat_base(), ("n",), Sort.NAT, (0, 1, 2), 2)
    assert [(pretty(c.term), c.cost, c.fingerprint) for c in pool] == [
        ("n", 1, (0, 1, 2)),
        ("zero", 1, (0, 0, 0)),
        ("(succ n)", 2, (1, 2, 3)),
        ("(succ zero)", 2, (1, 1, 1)),
    ]


def test_pool_at_size_1():
    pool = bottom_up_pool(default_nat_base(), ("n",), Sort.NAT, (0, 1, 2), 1)
    assert [pretty(c.term) for c in pool] == ["n", "zero"]


def test_uneconomical_duplicates_are_destroyed():
    pool = bottom_up_pool(default_nat_base(), ("n",), Sort.NAT, (0, 1, 2), 3)
    names = [pretty(c.term) for c in pool]
    assert "(add n zero)" not in names  # same behavior as n, higher cost
    assert "n" in names


def test_pool_pruning_is_sound_and_complete_up_to_size_4():
    probes = tuple(range(7))
    pool = bottom_up_pool(default_nat_base(), ("n",), Sort.NAT, probes, 4)
    by_fingerprint = {c.fingerprint: c for c in pool}

    oracle_best: dict[tuple, int] = {}
    for text in all_nat_terms(4):
        term = parse(text)
        fingerprint = tuple(eval_nat(term, {"n": p}) for p in probes)
        oracle_best[fingerprint] = min(oracle_best.get(fingerprint, 99), size(term))
    # completeness: one representative per brute-force behavior, no extras
    assert set(by_fingerprint) == set(oracle_best)
    # soundness/minimality: each representative has the class's minimal cost
    for fingerprint, candidate in by_fingerprint.items():
        assert candidate.cost == oracle_best[fingerprint]


def test_pool_representative_agrees_with_discarded_terms():
    probes = tuple(range(7))
    pool = bottom_up_pool(default_nat_base(), ("n",), Sort.NAT, probes, 3)
    by_fingerprint = {c.fingerprint: c for c in pool}
    for text in all_nat_terms(3):
        term = parse(text)
        fingerprint = tuple(eval_nat(term, {"n": p}) for p in probes)
        rep = by_fingerprint[fingerprint]
        for p in probes:
            assert eval_nat(rep.term, {"n": p}) == eval_nat(term, {"n": p})


def test_goal_construction():
    goal = make_goal([(1, 2), (5, 6)])
    assert goal.input_sort is Sort.NAT and goal.output_sort is Sort.NAT
    assert set(i for i, _ in goal.examples) <= set(goal.probes)
    with pytest.raises(ValueError):
        make_goal([])
    with pytest.raises(ValueError):
        make_goal([(1, 2), ((), 3)])
    with pytest.raises(ValueError):
        GoalSpec(Sort.NAT, Sort.NAT, ((9, 10),), probes=(0, 1))


def test_goal_text_format():
    goal = parse_goal_text("1 -> 2\n\n5 -> 6\n")
    assert goal.examples == ((1, 2), (5, 6))
    goal = parse_goal_text("() -> ()\n(2 1) -> (1 2)\n")
    assert goal.input_sort is Sort.LIST_NAT
    with pytest.raises(ValueError):
        parse_goal_text("1 = 2\n")


def test_successor_synthesis():
    goal = make_goal([(1, 2), (5, 6)])
    program = synthesize(default_nat_base(), goal, SCHEMA_BOTTOM_UP, 3)
    assert pretty(program.term) == "(succ n)"


def test_parity_flip_is_not_found_at_budget_2():
    goal = make_goal([(0, 1), (1, 0)])
    assert synthesize(default_nat_base(), goal, SCHEMA_BOTTOM_UP, 2) is None


def test_bottom_up_returns_minimal_matching_candidate():
    # doubling: n + n is the smallest matcher (size 3)
    goal = make_goal([(0, 0), (1, 2), (3, 6)])
    program = synthesize(default_nat_base(), goal, SCHEMA_BOTTOM_UP, 4)
    assert pretty(program.term) == "(add n n)"
    assert size(program.term) == 3


def test_fill_schema_holes_ordering():
    def cand(term_text, cost):
        return Candidate(parse(term_text), cost, (cost,))

    pools = (
        [cand("n", 1), cand("(succ n)", 2)],
        [cand("zero", 1), cand("(succ zero)", 2)],
        [cand("nil", 1)],
    )
    fillings = list(fill_schema_holes(pools))
    assert len(fillings) == 4  # full cartesian product
    totals = [sum(c.cost for c in filling) for filling in fillings]
    assert totals == sorted(totals)
    assert totals[0] == 3  # first filling is the minimal one
    assert fillings[0][0].term == parse("n")
    # deterministic: same input, same order
    assert list(fill_schema_holes(pools)) == fillings


def test_fill_schema_holes_with_empty_pool():
    assert list(fill_schema_holes(([], [Candidate(parse("n"), 1, (1,))]))) == []


def test_quicksort_schema_synthesis():
    goal = make_goal([((), ()), ((2, 1), (1, 2)), ((3, 1, 2), (1, 2, 3))])
    program = synthesize(default_list_base(), goal, SCHEMA_PIVOT_DC, 5)
    assert pretty(program.term) == "(pivotrec l (lt x pivot) (lt pivot x) (append l (cons pivot r)))"
    for k in range(5):
        for combo in combinations(range(5), k):
            for perm in permutations(combo):
                assert evaluate(program, perm) == insertion_sort(perm)


def test_quicksort_filling_appears_in_the_frontier():
    pred_pool = bottom_up_pool(default_list_base(), ("x", "pivot"), Sort.BOOL, PIVOT_PRED_PROBES, 5)
    combine_pool = bottom_up_pool(
        default_list_base(), ("l", "pivot", "r"), Sort.LIST_NAT, PIVOT_COMBINE_PROBES, 5
    )
    targets = {"(lt x pivot)", "(lt pivot x)"}
    assert targets <= {pretty(c.term) for c in pred_pool}
    assert "(append l (cons pivot r))" in {pretty(c.term) for c in combine_pool}
    wanted = (
        parse("(lt x pivot)"),
        parse("(lt pivot x)"),
        parse("(append l (cons pivot r))"),
    )
    seen = False
    for filling in fill_schema_holes((pred_pool, pred_pool, combine_pool)):
        if tuple(c.term for c in filling) == wanted:
            seen = True
            break
    assert seen


def test_synthesize_verifies_every_example():
    # probes distinguish, examples decide: a goal no term of size <= 4 meets
    goal = make_goal([(0, 5), (1, 0)])
    assert synthesize(default_nat_base(), goal, SCHEMA_BOTTOM_UP, 4) is None


def test_multi_variable_probe_validation():
    with pytest.raises(ValueError):
        bottom_up_pool(default_list_base(), ("x", "pivot"), Sort.BOOL, (1, 2, 3), 3)

"""Type-directed bottom-up synthesis from a reflection base.

The reflection base holds components (kernel operators with their
domain/range facts and simple refinements) plus the allowed literal
constants. Candidate pools are built bottom-up in canonical enumeration
order and pruned by behavioral fingerprint: two terms with identical
output vectors over the probe inputs collapse to the cheaper one.
Pruning is relative to probes only; final acceptance re-evaluates every
goal example, so a collapse can at worst force a larger budget, never a
wrong answer.

Recursion enters only through schemas. The divide-and-conquer schema
fills the three pivotrec holes (two predicates over x and pivot, one
combiner over l, pivot, r) from their own pools, cheapest total cost
first; the quicksort core falls out of it.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence, Union

from .enumeration import terms_of_size
from .interp import EvalBudget, evaluate, evaluate_env
from .kernel import (
    INPUT_VARS,
    OPS,
    Sort,
    Term,
    TypedProgram,
    Value,
    check_well_formed,
    parse_value,
    sort_of_value,
)


# ---------------------------------------------------------------------------
# Reflection base


@dataclass(frozen=True)
class ResultElemOfArg:
    """The result is an element of the i-th argument (e.g. first)."""

    arg: int


@dataclass(frozen=True)
class StrictOrderPredicate:
    """The component is a strict order proposition between elements."""


@dataclass(frozen=True)
class PivotSafe:
    """The component may appear in pivotrec holes without breaking totality."""


Refinement = Union[ResultElemOfArg, StrictOrderPredicate, PivotSafe]

LITERAL_NAMES = ("zero", "nil")


@dataclass(frozen=True)
class ComponentFact:
    """One reflection-base entry: a component with its domain/range knowledge."""

    component: str
    arg_sorts: tuple[Sort, ...]
    result_sort: Sort
    refinements: frozenset = frozenset()

    def __post_init__(self):
        spec = OPS.get(self.component)
        if spec is None or spec.is_variable or spec.arity == 0:
            raise ValueError(f"not a compound kernel component: {self.component!r}")
        if len(self.arg_sorts) != spec.arity:
            raise ValueError(f"{self.component!r} has arity {spec.arity}")
        for i, param in enumerate(spec.params):
            expected = param.sort if param.sort is not None else self.result_sort
            if self.arg_sorts[i] is not expected:
                raise ValueError(f"{self.component!r} argument {i} has sort {expected.value}")
        expected_result = spec.result if spec.result is not None else self.result_sort
        if self.result_sort is not expected_result:
            raise ValueError(f"{self.component!r} has result sort {expected_result.value}")
        for fact in self.refinements:
            if not isinstance(fact, (ResultElemOfArg, StrictOrderPredicate, PivotSafe)):
                raise ValueError(f"unknown refinement: {fact!r}")


def fact(component: str, *refinements: Refinement) -> ComponentFact:
    """Build a ComponentFact with sorts taken from the kernel typing table."""
    spec = OPS[component]
    if spec.result is None:
        raise ValueError("polymorphic components need explicit sorts; use ComponentFact")
    return ComponentFact(
        component,
        tuple(p.sort for p in spec.params),
        spec.result,
        frozenset(refinements),
    )


@dataclass(frozen=True)
class ReflectionBase:
    components: tuple[ComponentFact, ...]
    literals: tuple[str, ...] = LITERAL_NAMES

    def __post_init__(self):
        if not self.components and not self.literals:
            raise ValueError("reflection base must not be empty")
        for lit in self.literals:
            if lit not in LITERAL_NAMES:
                raise ValueError(f"not an allowed literal: {lit!r}")

    def op_names(self) -> frozenset[str]:
        return frozenset(c.component for c in self.components) | frozenset(self.literals)


def default_nat_base() -> ReflectionBase:
    return ReflectionBase(
        components=(fact("succ"), fact("add"), fact("mul"), fact("precnat")),
        literals=("zero",),
    )


def default_list_base() -> ReflectionBase:
    return ReflectionBase(
        components=(
            fact("cons", PivotSafe()),
            fact("first", ResultElemOfArg(0)),
            fact("rest"),
            fact("append", PivotSafe()),
            fact("len"),
            fact("lt", StrictOrderPredicate()),
        ),
        literals=("zero", "nil"),
    )


# ---------------------------------------------------------------------------
# Goals and probes


def default_probes(input_sort: Sort) -> tuple[Value, ...]:
    if input_sort is Sort.NAT:
        return tuple(range(7))
    if input_sort is Sort.LIST_NAT:
        return _lists_over(alphabet=(0, 1, 2), max_len=3)
    raise ValueError(f"no default probes for sort {input_sort.value}")


def _lists_over(alphabet: tuple[int, ...], max_len: int) -> tuple[tuple[int, ...], ...]:
    out: list[tuple[int, ...]] = []
    for length in range(max_len + 1):
        out.extend(product(alphabet, repeat=length))
    return tuple(out)


@dataclass(frozen=True)
class GoalSpec:
    """A synthesis task: I/O examples plus probe inputs for fingerprinting."""

    input_sort: Sort
    output_sort: Sort
    examples: tuple[tuple[Value, Value], ...]
    probes: tuple[Value, ...]

    def __post_init__(self):
        if not self.examples:
            raise ValueError("goal needs at least one example")
        probe_set = set(self.probes)
        for inp, _ in self.examples:
            if inp not in probe_set:
                raise ValueError(f"probes must cover example input {inp!r}")


def make_goal(examples: Sequence[tuple[Value, Value]], probes: Sequence[Value] | None = None) -> GoalSpec:
    """Infer sorts from the example values; default probes by input sort."""
    examples = tuple(examples)
    if not examples:
        raise ValueError("goal needs at least one example")
    input_sort = sort_of_value(examples[0][0])
    output_sort = sort_of_value(examples[0][1])
    for inp, out in examples:
        if sort_of_value(inp) is not input_sort or sort_of_value(out) is not output_sort:
            raise ValueError("examples disagree on input/output sorts")
    if probes is None:
        probes = default_probes(input_sort)
    probe_list = list(probes)
    for inp, _ in examples:
        if inp not in probe_list:
            probe_list.append(inp)
    return GoalSpec(input_sort, output_sort, examples, tuple(probe_list))


def parse_goal_text(text: str) -> GoalSpec:
    """One "input -> output" pair per line, values written as S-expressions."""
    examples = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        left, sep, right = line.partition("->")
        if not sep:
            raise ValueError(f"goal line {lineno} has no '->': {raw!r}")
        examples.append((parse_value(left.strip()), parse_value(right.strip())))
    return make_goal(examples)


def load_goal(path: str) -> GoalSpec:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_goal_text(handle.read())


# ---------------------------------------------------------------------------
# Candidate pools


@dataclass(frozen=True)
class Candidate:
    term: Term
    cost: int
    fingerprint: tuple


def _normalize_probes(free_vars: tuple[str, ...], probes: Sequence) -> list[dict[str, Value]]:
    # Single-variable signatures take bare values; multi-variable ones take
    # one assignment tuple per probe, aligned with free_vars.
    if len(free_vars) == 1:
        var = free_vars[0]
        return [{var: probe} for probe in probes]
    envs = []
    for probe in probes:
        if not isinstance(probe, tuple) or len(probe) != len(free_vars):
            raise ValueError(f"probe {probe!r} does not match signature {free_vars}")
        envs.append(dict(zip(free_vars, probe)))
    return envs


def bottom_up_pool(
    base: ReflectionBase,
    free_vars: tuple[str, ...],
    target_sort: Sort,
    probes: Sequence,
    max_size: int,
    budget: EvalBudget | None = None,
) -> list[Candidate]:
    """One minimal representative per behavior among terms of size <= max_size.

    Candidates come out in canonical enumeration order (size ascending, then
    rank-lexicographic), so the first member of each behavior class is the
    minimum under (cost, canonical order); later equals are destroyed as
    uneconomical variants.
    """
    if max_size < 1:
        raise ValueError(f"max_size must be >= 1, got {max_size}")
    if not probes:
        raise ValueError("pool needs at least one probe")
    envs = _normalize_probes(free_vars, probes)
    ops = base.op_names()
    scope = frozenset(free_vars)
    seen: set[tuple] = set()
    pool: list[Candidate] = []
    for size_ in range(1, max_size + 1):
        for term in terms_of_size(ops, scope, target_sort, size_):
            fingerprint = tuple(evaluate_env(term, env, budget) for env in envs)
            if fingerprint in seen:
                continue
            seen.add(fingerprint)
            pool.append(Candidate(term, size_, fingerprint))
    return pool


# ---------------------------------------------------------------------------
# Schemas


SCHEMA_BOTTOM_UP = "bottomup"
SCHEMA_PIVOT_DC = "pivotdc"


@dataclass(frozen=True)
class HoleSpec:
    name: str
    free_vars: tuple[str, ...]
    sort: Sort


PIVOT_HOLES: tuple[HoleSpec, ...] = (
    HoleSpec("pred_left", ("x", "pivot"), Sort.BOOL),
    HoleSpec("pred_right", ("x", "pivot"), Sort.BOOL),
    HoleSpec("combine", ("l", "pivot", "r"), Sort.LIST_NAT),
)

# Hole fingerprints use small fixed domains per bound variable; rich enough
# to separate the elementary list components at desk-scale budgets.
_HOLE_NATS = (0, 1, 2, 3)
_HOLE_LISTS = _lists_over(alphabet=(0, 1), max_len=2)

PIVOT_PRED_PROBES: tuple[tuple[int, int], ...] = tuple(product(_HOLE_NATS, _HOLE_NATS))
PIVOT_COMBINE_PROBES: tuple[tuple, ...] = tuple(product(_HOLE_LISTS, _HOLE_NATS, _HOLE_LISTS))


def fill_schema_holes(pools: Sequence[list[Candidate]]) -> Iterator[tuple[Candidate, ...]]:
    """All hole fillings, non-decreasing total cost, deterministic order.

    Within one total cost, fillings come out lexicographically by their
    per-hole pool positions; pools are expected in canonical order, so the
    first filling is the minimal one.
    """
    if any(not pool for pool in pools):
        return
    costs = [[c.cost for c in pool] for pool in pools]
    min_costs = [c[0] for c in costs]
    max_costs = [c[-1] for c in costs]

    def fill(hole: int, remaining: int) -> Iterator[tuple[Candidate, ...]]:
        pool = pools[hole]
        if hole == len(pools) - 1:
            lo = bisect_left(costs[hole], remaining)
            hi = bisect_right(costs[hole], remaining)
            for i in range(lo, hi):
                yield (pool[i],)
            return
        rest_min = sum(min_costs[hole + 1 :])
        rest_max = sum(max_costs[hole + 1 :])
        hi = bisect_right(costs[hole], remaining - rest_min)
        for i in range(hi):
            candidate = pool[i]
            if candidate.cost + rest_min > remaining or candidate.cost + rest_max < remaining:
                continue
            for rest in fill(hole + 1, remaining - candidate.cost):
                yield (candidate,) + rest

    for total in range(sum(min_costs), sum(max_costs) + 1):
        yield from fill(0, total)


def _assemble_pivot(filling: tuple[Candidate, ...]) -> Term:
    pred_left, pred_right, combine = filling
    return Term("pivotrec", (Term("l"), pred_left.term, pred_right.term, combine.term))


def synthesize(
    base: ReflectionBase,
    goal: GoalSpec,
    schema: str,
    budget: int,
    eval_budget: EvalBudget | None = None,
) -> TypedProgram | None:
    """Search for a program matching every goal example; None when absent.

    `budget` is the per-hole (pivotdc) or whole-term (bottomup) size bound.
    Every returned program has been re-verified by evaluation on every
    example.
    """
    if schema == SCHEMA_BOTTOM_UP:
        var = INPUT_VARS[goal.input_sort]
        pool = bottom_up_pool(base, (var,), goal.output_sort, goal.probes, budget, eval_budget)
        for candidate in pool:
            if all(
                evaluate_env(candidate.term, {var: inp}, eval_budget) == out
                for inp, out in goal.examples
            ):
                return check_well_formed(candidate.term, goal.output_sort, {var})
        return None
    if schema == SCHEMA_PIVOT_DC:
        if goal.input_sort is not Sort.LIST_NAT or goal.output_sort is not Sort.LIST_NAT:
            raise ValueError("the divide-and-conquer schema sorts lists into lists")
        pred_pool = bottom_up_pool(
            base, PIVOT_HOLES[0].free_vars, PIVOT_HOLES[0].sort, PIVOT_PRED_PROBES, budget, eval_budget
        )
        combine_pool = bottom_up_pool(
            base, PIVOT_HOLES[2].free_vars, PIVOT_HOLES[2].sort, PIVOT_COMBINE_PROBES, budget, eval_budget
        )
        for filling in fill_schema_holes((pred_pool, pred_pool, combine_pool)):
            term = _assemble_pivot(filling)
            program = check_well_formed(term, Sort.LIST_NAT, {"l"})
            if all(evaluate(program, inp, eval_budget) == out for inp, out in goal.examples):
                return program
        return None
    raise ValueError(f"unknown schema: {schema!r}")

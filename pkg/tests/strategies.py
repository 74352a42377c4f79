"""Random well-formed term generation: a plain-rng generator for bulk
sampling and a hypothesis strategy built on the same structure choices."""

from hypothesis import strategies as st

from diagforge.enumeration import TIER_OPS, Tier
from diagforge.kernel import OP_TABLE, Sort, Term

MIN_SIZE = {Sort.NAT: 1, Sort.BOOL: 3, Sort.LIST_NAT: 1}


def _options(sort, scope, budget, ops):
    found = []
    for spec in OP_TABLE:
        if spec.is_variable:
            if spec.name in scope and spec.var_sort is sort:
                found.append(spec)
        elif spec.name not in ops:
            continue
        elif spec.arity == 0:
            if spec.result is sort:
                found.append(spec)
        else:
            result = spec.result if spec.result is not None else sort
            if result is not sort:
                continue
            arg_sorts = [p.sort if p.sort is not None else sort for p in spec.params]
            if budget >= 1 + sum(MIN_SIZE[s] for s in arg_sorts):
                found.append(spec)
    return found


def _build(choose, sort, scope, budget, ops):
    spec = choose(_options(sort, scope, budget, ops))
    if spec.arity == 0:
        return Term(spec.name)
    arg_sorts = [p.sort if p.sort is not None else sort for p in spec.params]
    arg_scopes = [scope | frozenset(p.binders) for p in spec.params]
    budgets = [MIN_SIZE[s] for s in arg_sorts]
    spare = budget - 1 - sum(budgets)
    while spare > 0:
        slot = choose(range(len(budgets) + 1))
        if slot == len(budgets):  # stop distributing early: favors small terms
            break
        budgets[slot] += 1
        spare -= 1
    return Term(
        spec.name,
        tuple(_build(choose, arg_sorts[i], arg_scopes[i], budgets[i], ops) for i in range(spec.arity)),
    )


def random_term(rng, sort=Sort.NAT, scope=frozenset({"n"}), max_size=10, tier=Tier.FULL):
    """One random well-formed term of size <= max_size (plain random.Random)."""
    return _build(lambda xs: rng.choice(list(xs)), sort, scope, rng.randint(1, max_size), TIER_OPS[tier])


@st.composite
def terms(draw, sort=Sort.NAT, scope=frozenset({"n"}), max_size=10, tier=Tier.FULL):
    """Hypothesis strategy over well-formed terms of the given tier."""
    budget = draw(st.integers(1, max_size))

    def choose(xs):
        xs = list(xs)
        return xs[draw(st.integers(0, len(xs) - 1))]

    return _build(choose, sort, scope, budget, TIER_OPS[tier])

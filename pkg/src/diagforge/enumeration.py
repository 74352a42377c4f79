"""Effective enumeration of well-formed programs.

Programs are streamed size-ascending, tie-broken inside each size class by
lexicographic comparison of pre-order constructor-rank sequences. Indices
are 1-based. Ill-typed descriptions are never assigned indices, so every
stream element denotes a total function.

The size-layer generator is also the engine behind synthesis candidate
pools: both are parameterized by an allowed operator set and a variable
scope, so their canonical orders agree by construction.
"""

from __future__ import annotations

from bisect import bisect_left
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Iterator

from .errors import NotInTierError, TypeCheckError
from .kernel import (
    OPS,
    OP_TABLE,
    Sort,
    Term,
    TypedProgram,
    infer_sort,
    rank_seq,
    size,
    subterms,
)


class Tier(Enum):
    NATFN = "natfn"
    FULL = "full"


# Operator inventories exclude variables: variable occurrences are licensed
# by the scope (binders introduce them), not by the tier.
TIER_OPS: dict[Tier, frozenset[str]] = {
    Tier.NATFN: frozenset({"zero", "succ", "add", "mul", "precnat"}),
    Tier.FULL: frozenset(spec.name for spec in OP_TABLE if not spec.is_variable),
}

ROOT_SORT = Sort.NAT
ROOT_SCOPE = frozenset({"n"})


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ways to write total as an ordered sum of `parts` positive ints."""
    if parts == 1:
        yield (total,)
        return
    for head in range(1, total - parts + 2):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


@lru_cache(maxsize=None)
def terms_of_size(ops: frozenset[str], scope: frozenset[str], sort: Sort, size_: int) -> tuple[Term, ...]:
    """All well-formed terms of exactly this size, canonically ordered.

    `ops` is the allowed non-variable operator set; variables come from
    `scope` and binders extend it for the relevant subtrees. Construction
    is sort- and scope-directed, so no post-hoc filtering is needed.
    """
    out: list[Term] = []
    if size_ == 1:
        for spec in OP_TABLE:
            if spec.is_variable:
                if spec.name in scope and spec.var_sort is sort:
                    out.append(Term(spec.name))
            elif spec.name in ops and spec.arity == 0 and spec.result is sort:
                out.append(Term(spec.name))
        out.sort(key=rank_seq)
        return tuple(out)
    for spec in OP_TABLE:
        if spec.is_variable or spec.name not in ops or spec.arity == 0:
            continue
        if spec.result is not None and spec.result is not sort:
            continue
        arg_sorts = [p.sort if p.sort is not None else sort for p in spec.params]
        arg_scopes = [scope if not p.binders else scope | frozenset(p.binders) for p in spec.params]
        if size_ - 1 < spec.arity:
            continue
        for split in _compositions(size_ - 1, spec.arity):
            pools = [
                terms_of_size(ops, arg_scopes[i], arg_sorts[i], split[i])
                for i in range(spec.arity)
            ]
            if any(not pool for pool in pools):
                continue
            _product_into(out, spec.name, pools)
    out.sort(key=rank_seq)
    return tuple(out)


def _product_into(out: list[Term], head: str, pools: list[tuple[Term, ...]]) -> None:
    if len(pools) == 1:
        out.extend(Term(head, (a,)) for a in pools[0])
    elif len(pools) == 2:
        out.extend(Term(head, (a, b)) for a in pools[0] for b in pools[1])
    else:
        out.extend(Term(head, combo) for combo in product(*pools))


def tier_layer(tier: Tier, size_: int) -> tuple[Term, ...]:
    return terms_of_size(TIER_OPS[tier], ROOT_SCOPE, ROOT_SORT, size_)


@lru_cache(maxsize=None)
def _tier_layer_keys(tier: Tier, size_: int) -> tuple[tuple[int, ...], ...]:
    return tuple(rank_seq(t) for t in tier_layer(tier, size_))


def _typed(t: Term) -> TypedProgram:
    return TypedProgram(t, ROOT_SORT, ROOT_SCOPE)


def enumerate_stream(tier: Tier) -> Iterator[TypedProgram]:
    """Every well-formed program of the tier, exactly once, in canonical order."""
    size_ = 1
    while True:
        for t in tier_layer(tier, size_):
            yield _typed(t)
        size_ += 1


class EnumCursor:
    """Single-consumer cursor over a tier's stream; `next_index` is 1-based.

    Independent cursors over the same tier agree element-wise.
    """

    def __init__(self, tier: Tier):
        self.tier = tier
        self.next_index = 1
        self._stream = enumerate_stream(tier)

    def take(self) -> tuple[int, TypedProgram]:
        index = self.next_index
        program = next(self._stream)
        self.next_index += 1
        return index, program


def program_at(tier: Tier, i: int) -> TypedProgram:
    """The i-th element (1-based) of the tier's stream."""
    if i < 1:
        raise ValueError(f"index must be >= 1, got {i}")
    size_ = 1
    seen = 0
    while True:
        layer = tier_layer(tier, size_)
        if i <= seen + len(layer):
            return _typed(layer[i - seen - 1])
        seen += len(layer)
        size_ += 1


def index_of(tier: Tier, p: TypedProgram | Term) -> int:
    """The unique index with program_at(tier, index) == p.

    Raises NotInTierError when p uses operators outside the tier, uses
    the wrong free variables, or is ill-typed at the tier's sort.
    """
    term = p.term if isinstance(p, TypedProgram) else p
    allowed = TIER_OPS[tier]
    for node in subterms(term):
        spec = OPS.get(node.head)
        if spec is None or (not spec.is_variable and node.head not in allowed):
            raise NotInTierError(f"operator {node.head!r} is outside tier {tier.value}")
    try:
        found = infer_sort(term, ROOT_SCOPE)
    except TypeCheckError as exc:
        raise NotInTierError(f"not well-formed in tier {tier.value}: {exc}") from exc
    if found is not ROOT_SORT:
        raise NotInTierError(f"programs of tier {tier.value} have sort {ROOT_SORT.value}")
    target_size = size(term)
    before = 0
    for s in range(1, target_size):
        before += len(tier_layer(tier, s))
    keys = _tier_layer_keys(tier, target_size)
    pos = bisect_left(keys, rank_seq(term))
    layer = tier_layer(tier, target_size)
    assert pos < len(layer) and layer[pos] == term, "enumeration layer is incomplete"
    return before + pos + 1

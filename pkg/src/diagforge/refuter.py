"""Refute classifiers that claim to select total functions.

A classifier judges enumeration indices (the enumeration is the numbering).
Whatever subsequence it accepts, the diagonal over that subsequence is a
total function disagreeing with every accepted function on the prefix, so
no classifier can have accepted a family containing it. Program-backed
deciders live inside the kernel language itself: decider d accepts index i
iff d(i) != 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import islice
from typing import Iterator, Union

from .errors import EmptyClassifierError, ResourceExhaustedError
from .enumeration import Tier, enumerate_stream
from .interp import EvalBudget, evaluate
from .kernel import TypedProgram, pretty, size
from .machines import DiagonalOf, OracleFn, Witness

DEFAULT_HORIZON = 100_000


@dataclass(frozen=True)
class MaxSize:
    """Accept exactly the programs of size <= bound."""

    bound: int


@dataclass(frozen=True)
class AcceptAll:
    pass


@dataclass(frozen=True)
class AcceptNone:
    pass


@dataclass(frozen=True)
class ProgramDecider:
    """A kernel program as its own decider: accept index i iff decider(i) != 0."""

    decider: TypedProgram


Classifier = Union[MaxSize, AcceptAll, AcceptNone, ProgramDecider]


def describe_classifier(c: Classifier) -> str:
    if isinstance(c, MaxSize):
        return f"maxsize:{c.bound}"
    if isinstance(c, AcceptAll):
        return "all"
    if isinstance(c, AcceptNone):
        return "none"
    return f"program:{pretty(c.decider.term)}"


def _accepts(c: Classifier, index: int, program: TypedProgram, budget: EvalBudget | None) -> bool:
    if isinstance(c, MaxSize):
        return size(program.term) <= c.bound
    if isinstance(c, AcceptAll):
        return True
    if isinstance(c, AcceptNone):
        return False
    return evaluate(c.decider, index, budget) != 0


def accepted_stream(
    c: Classifier, tier: Tier, budget: EvalBudget | None = None
) -> Iterator[tuple[int, TypedProgram]]:
    """The accepted subsequence of the tier's enumeration, indices attached."""
    for index, program in enumerate(enumerate_stream(tier), start=1):
        if _accepts(c, index, program, budget):
            yield index, program


@dataclass(frozen=True)
class RefutationReport:
    classifier: str
    tier: Tier
    accepted_prefix: tuple[tuple[int, TypedProgram], ...]
    witnesses: tuple[Witness, ...]
    diag: OracleFn


def refute(
    c: Classifier,
    tier: Tier,
    count: int,
    horizon: int = DEFAULT_HORIZON,
    budget: EvalBudget | None = None,
) -> RefutationReport:
    """Diagonalize over the classifier's accepted subsequence.

    The diagonal runs over accepted positions k (not tier indices): with
    a_1, a_2, ... the accepted programs, diag(k) = a_k(k) + 1. Raises
    EmptyClassifierError when fewer than `count` programs are accepted
    within the first `horizon` enumeration indices.
    """
    if count < 1:
        raise ValueError(f"witness count must be >= 1, got {count}")
    # The horizon bounds the scan of the underlying enumeration, not the
    # accepted subsequence (which may be empty).
    accepted: list[tuple[int, TypedProgram]] = []
    for index, program in islice(enumerate(enumerate_stream(tier), start=1), horizon):
        if _accepts(c, index, program, budget):
            accepted.append((index, program))
            if len(accepted) == count:
                break
    if len(accepted) < count:
        raise EmptyClassifierError(len(accepted), count, horizon)

    programs = [program for _, program in accepted]

    def fn(k: int) -> int:
        pos = k if k >= 1 else 1
        try:
            return evaluate(programs[pos - 1], pos, budget) + 1
        except ResourceExhaustedError as exc:
            raise ResourceExhaustedError(exc.steps_used, exc.reason, index=pos) from exc

    name = f"diag(accepted({describe_classifier(c)}, {tier.value}))"
    diag = OracleFn(fn, DiagonalOf(name), name=name)
    witnesses = []
    for k in range(1, count + 1):
        try:
            fn_value = evaluate(programs[k - 1], k, budget)
        except ResourceExhaustedError as exc:
            raise ResourceExhaustedError(exc.steps_used, exc.reason, index=k) from exc
        witnesses.append(Witness(k, fn_value, diag(k)))
    witnesses = tuple(witnesses)
    return RefutationReport(
        classifier=describe_classifier(c),
        tier=tier,
        accepted_prefix=tuple(accepted),
        witnesses=witnesses,
        diag=diag,
    )


def report_jsonl(report: RefutationReport) -> str:
    lines = [
        json.dumps(
            {"classifier": report.classifier, "tier": report.tier.value, "N": len(report.witnesses)}
        )
    ]
    lines.extend(
        json.dumps({"index": w.index, "fn_at_n": w.fn_at_n, "g_at_n": w.g_at_n})
        for w in report.witnesses
    )
    return "\n".join(lines)

"""Analytical spaces: evolving behavior-equivalence classes over probes.

A space is partial knowledge whose domain of application is its probe list.
Terms absorbed into a space are grouped by fingerprint (output vector over
the probes); each class keeps its full member list plus a minimal-cost
representative, so economical variants survive and uneconomical ones are
displaced. Domains expand explicitly: new probes refine the equivalence and
may split classes; unification merges two spaces over the union of their
probes. Spaces are values: every operation returns a new space.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DuplicateProbeError, EmptyProbesError
from .interp import EvalBudget, evaluate_env
from .kernel import (
    INPUT_VARS,
    Sort,
    Term,
    Value,
    canonical_key,
    check_well_formed,
    format_value,
    infer_sort,
    parse,
    pretty,
    size,
    sort_of_value,
)
from .synthesis import Candidate


@dataclass(frozen=True)
class CostPolicy:
    """How 'economical' is measured: term size, with canonical enumeration
    order refining it to a total order."""

    measure: str = "term-size"

    def key(self, term: Term) -> tuple[int, tuple[int, ...]]:
        return canonical_key(term)


DEFAULT_COST = CostPolicy()


@dataclass(frozen=True)
class SpaceClass:
    fingerprint: tuple  # (output sort tag, output vector) over the space's probes
    representative: Candidate
    members: tuple[Term, ...]


@dataclass(frozen=True)
class AnalyticalSpace:
    probes: tuple[Value, ...]
    classes: tuple[SpaceClass, ...]
    history: tuple[tuple, ...]

    @property
    def input_sort(self) -> Sort:
        return sort_of_value(self.probes[0])

    @property
    def input_var(self) -> str:
        return INPUT_VARS[self.input_sort]

    def class_map(self) -> dict[tuple, SpaceClass]:
        return {c.fingerprint: c for c in self.classes}


def _check_probes(probes: tuple[Value, ...]) -> None:
    if not probes:
        raise EmptyProbesError("a space needs at least one probe")
    if len(set(probes)) != len(probes):
        raise DuplicateProbeError(f"duplicate probe in {probes!r}")
    first = sort_of_value(probes[0])
    if first not in INPUT_VARS:
        raise ValueError(f"no input variable for probes of sort {first.value}")
    for p in probes[1:]:
        if sort_of_value(p) is not first:
            raise ValueError("a space has a single input sort; probes disagree")


def _fingerprint(term: Term, probes: tuple[Value, ...], var: str, budget: EvalBudget | None) -> tuple:
    # The output sort tags the key: True and 1 are equal (and hash alike)
    # in Python, so raw vectors of mixed-sort outputs could collide.
    out_sort = infer_sort(term, frozenset({var}))
    outputs = tuple(evaluate_env(term, {var: p}, budget) for p in probes)
    return (out_sort.value, outputs)


def _rebuild(
    probes: tuple[Value, ...],
    members: list[Term],
    history: tuple[tuple, ...],
    budget: EvalBudget | None,
) -> AnalyticalSpace:
    """Group members by fingerprint over `probes`; minimal-cost representatives."""
    var = INPUT_VARS[sort_of_value(probes[0])]
    grouped: dict[tuple, list[Term]] = {}
    for term in members:
        grouped.setdefault(_fingerprint(term, probes, var, budget), []).append(term)
    classes = []
    for fingerprint, group in grouped.items():
        unique = sorted(set(group), key=DEFAULT_COST.key)
        best = unique[0]
        classes.append(
            SpaceClass(fingerprint, Candidate(best, size(best), fingerprint), tuple(unique))
        )
    classes.sort(key=lambda c: DEFAULT_COST.key(c.representative.term))
    return AnalyticalSpace(probes, tuple(classes), history)


def _probes_event(probes: tuple[Value, ...]) -> tuple[str, ...]:
    return tuple(format_value(p) for p in probes)


def new_space(probes: tuple[Value, ...] | list[Value]) -> AnalyticalSpace:
    probes = tuple(probes)
    _check_probes(probes)
    return AnalyticalSpace(probes, (), (("created", _probes_event(probes)),))


def absorb(space: AnalyticalSpace, term: Term, budget: EvalBudget | None = None) -> AnalyticalSpace:
    """Add one term: new class, displaced representative, or kept as member.

    Probes do not change, so existing fingerprints stay valid; only the
    touched class is recomputed.
    """
    var = space.input_var
    check_well_formed(term, infer_sort(term, frozenset({var})), {var})
    fingerprint = _fingerprint(term, space.probes, var, budget)
    existing = space.class_map().get(fingerprint)
    if existing is None:
        outcome = "new"
        updated = SpaceClass(fingerprint, Candidate(term, size(term), fingerprint), (term,))
    else:
        if DEFAULT_COST.key(term) < DEFAULT_COST.key(existing.representative.term):
            outcome = "displaced"
        else:
            outcome = "kept"
        members = sorted(set(existing.members) | {term}, key=DEFAULT_COST.key)
        best = members[0]
        updated = SpaceClass(fingerprint, Candidate(best, size(best), fingerprint), tuple(members))
    classes = [c for c in space.classes if c.fingerprint != fingerprint] + [updated]
    classes.sort(key=lambda c: DEFAULT_COST.key(c.representative.term))
    history = space.history + (("absorbed", pretty(term), outcome),)
    return AnalyticalSpace(space.probes, tuple(classes), history)


def unify(a: AnalyticalSpace, b: AnalyticalSpace, budget: EvalBudget | None = None) -> AnalyticalSpace:
    """Merge two spaces over the union of their probes (a's order first).

    Every member of either space lands in exactly one class of the result;
    finer probes may split classes, so the class count can exceed both
    inputs'. The result is a fresh space whose log records the unification
    with both parents' log lengths (embedding whole parent logs would blow
    up under repeated unification).
    """
    if a.input_sort is not b.input_sort:
        raise ValueError("cannot unify spaces over different input sorts")
    known = set(a.probes)
    probes = a.probes + tuple(p for p in b.probes if p not in known)
    members = [m for c in a.classes for m in c.members] + [m for c in b.classes for m in c.members]
    history = (
        ("created", _probes_event(probes)),
        ("unified", _probes_event(probes), len(a.history), len(b.history)),
    )
    return _rebuild(probes, members, history, budget)


def expand_domain(
    space: AnalyticalSpace,
    new_probes: tuple[Value, ...] | list[Value],
    budget: EvalBudget | None = None,
) -> AnalyticalSpace:
    """Append probes; re-fingerprint members, splitting classes that disagree."""
    new_probes = tuple(new_probes)
    existing = set(space.probes)
    for p in new_probes:
        if p in existing:
            raise DuplicateProbeError(f"probe {format_value(p)} already in the domain")
        if sort_of_value(p) is not space.input_sort:
            raise ValueError("expansion probes must match the space's input sort")
        existing.add(p)
    if len(set(new_probes)) != len(new_probes):
        raise DuplicateProbeError(f"duplicate probe in {new_probes!r}")
    probes = space.probes + new_probes
    members = [m for c in space.classes for m in c.members]
    history = space.history + (
        ("expanded", _probes_event(new_probes), len(space.classes)),
    )
    return _rebuild(probes, members, history, budget)


# ---------------------------------------------------------------------------
# Snapshots (full state, for the CLI) and exports (summary view)


def _value_json(v: Value):
    if isinstance(v, tuple):
        return list(v)
    return v


def _fingerprint_json(fingerprint: tuple):
    out_sort, outputs = fingerprint
    return {"sort": out_sort, "outputs": [_value_json(v) for v in outputs]}


def snapshot(space: AnalyticalSpace) -> dict:
    return {
        "probes": [_value_json(p) for p in space.probes],
        "classes": [
            {
                "fingerprint": _fingerprint_json(c.fingerprint),
                "representative": pretty(c.representative.term),
                "members": [pretty(m) for m in c.members],
            }
            for c in space.classes
        ],
        "history": [list(event) for event in space.history],
    }


def _deep_tuple(x):
    if isinstance(x, list):
        return tuple(_deep_tuple(item) for item in x)
    return x


def load_snapshot(data: dict, budget: EvalBudget | None = None) -> AnalyticalSpace:
    probes = tuple(tuple(p) if isinstance(p, list) else p for p in data["probes"])
    _check_probes(probes)
    members = [parse(m) for c in data["classes"] for m in c["members"]]
    history = tuple(_deep_tuple(event) for event in data["history"])
    return _rebuild(probes, members, history, budget)


def export_summary(space: AnalyticalSpace) -> dict:
    return {
        "probes": [_value_json(p) for p in space.probes],
        "classes": [
            {
                "fingerprint": _fingerprint_json(c.fingerprint),
                "representative": pretty(c.representative.term),
                "member_count": len(c.members),
            }
            for c in space.classes
        ],
        "history_length": len(space.history),
    }

"""Big-step evaluator for the kernel language.

Every well-formed program terminates on every input: precnat iterates a
precomputed count, pivotrec recurses only on filtered sublists of the tail
(strictly shorter), and everything else is structural. The budget therefore
bounds wall clock, not semantics. Two caps are enforced:

- max_steps: one step per recursive evaluation call;
- max_value_bits: naturals may not outgrow this bit length. Step counting
  alone cannot bound wall clock (iterated squaring builds astronomically
  large ints in a handful of steps), so arithmetic pre-checks operand sizes
  and raises ResourceExhausted before computing an oversized result.

Totality defaults: first of an empty list is 0, rest of an empty list is
the empty list.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceExhaustedError
from .kernel import Sort, Term, TypedProgram, VAR_SORTS, Value

DEFAULT_MAX_STEPS = 1_000_000
DEFAULT_MAX_VALUE_BITS = 1 << 16


@dataclass(frozen=True)
class EvalBudget:
    max_steps: int = DEFAULT_MAX_STEPS
    max_value_bits: int = DEFAULT_MAX_VALUE_BITS

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.max_value_bits < 1:
            raise ValueError("max_value_bits must be >= 1")


DEFAULT_BUDGET = EvalBudget()


class _Fuel:
    __slots__ = ("remaining", "max_steps", "max_bits")

    def __init__(self, budget: EvalBudget):
        self.remaining = budget.max_steps
        self.max_steps = budget.max_steps
        self.max_bits = budget.max_value_bits

    def spend(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise ResourceExhaustedError(self.max_steps, reason="steps")

    def check_bits(self, bits: int) -> None:
        if bits > self.max_bits:
            raise ResourceExhaustedError(self.max_steps - self.remaining, reason="value-bits")


def _run(t: Term, env: dict, fuel: _Fuel) -> Value:
    fuel.spend()
    head = t.head
    args = t.args
    if not args:
        if head == "zero":
            return 0
        if head == "nil":
            return ()
        return env[head]  # variable occurrence; well-formedness guarantees presence
    if head == "succ":
        v = _run(args[0], env, fuel)
        fuel.check_bits(v.bit_length() + 1)
        return v + 1
    if head == "add":
        a = _run(args[0], env, fuel)
        b = _run(args[1], env, fuel)
        fuel.check_bits(max(a.bit_length(), b.bit_length()) + 1)
        return a + b
    if head == "mul":
        a = _run(args[0], env, fuel)
        b = _run(args[1], env, fuel)
        fuel.check_bits(a.bit_length() + b.bit_length())
        return a * b
    if head == "precnat":
        count = _run(args[2], env, fuel)
        acc = _run(args[0], env, fuel)
        step = args[1]
        for i in range(count):
            inner = dict(env)
            inner["acc"] = acc
            inner["idx"] = i
            acc = _run(step, inner, fuel)
        return acc
    if head == "cons":
        h = _run(args[0], env, fuel)
        return (h,) + _run(args[1], env, fuel)
    if head == "first":
        xs = _run(args[0], env, fuel)
        return xs[0] if xs else 0
    if head == "rest":
        return _run(args[0], env, fuel)[1:]
    if head == "append":
        return _run(args[0], env, fuel) + _run(args[1], env, fuel)
    if head == "len":
        return len(_run(args[0], env, fuel))
    if head == "lt":
        return _run(args[0], env, fuel) < _run(args[1], env, fuel)
    if head == "if":
        return _run(args[1] if _run(args[0], env, fuel) else args[2], env, fuel)
    if head == "filter":
        xs = _run(args[0], env, fuel)
        kept = []
        for v in xs:
            inner = dict(env)
            inner["x"] = v
            if _run(args[1], inner, fuel):
                kept.append(v)
        return tuple(kept)
    if head == "pivotrec":
        xs = _run(args[0], env, fuel)
        return _pivot(xs, args[1], args[2], args[3], env, fuel)
    raise AssertionError(f"no evaluation rule for {head!r}")


def _pivot(items: tuple, pred_left: Term, pred_right: Term, combine: Term, env: dict, fuel: _Fuel) -> tuple:
    fuel.spend()
    if not items:
        return ()
    pivot, tail = items[0], items[1:]
    left = []
    right = []
    for v in tail:
        inner = dict(env)
        inner["x"] = v
        inner["pivot"] = pivot
        if _run(pred_left, inner, fuel):
            left.append(v)
        if _run(pred_right, inner, fuel):
            right.append(v)
    sorted_left = _pivot(tuple(left), pred_left, pred_right, combine, env, fuel)
    sorted_right = _pivot(tuple(right), pred_left, pred_right, combine, env, fuel)
    out_env = dict(env)
    out_env["l"] = sorted_left
    out_env["pivot"] = pivot
    out_env["r"] = sorted_right
    return _run(combine, out_env, fuel)


def evaluate_env(t: Term, env: dict[str, Value], budget: EvalBudget | None = None) -> Value:
    """Evaluate a term under an explicit variable environment."""
    return _run(t, env, _Fuel(budget or DEFAULT_BUDGET))


def evaluate(program: TypedProgram, value: Value, budget: EvalBudget | None = None) -> Value:
    """Evaluate a single-input program on one input value.

    The program's free variables must all be the same input variable
    (n for naturals, l for lists); the input is bound to it. Evaluation is
    pure and deterministic: identical inputs yield identical outputs.
    """
    env: dict[str, Value] = {}
    for var in program.free_vars:
        expected = VAR_SORTS[var]
        if expected is Sort.NAT and (isinstance(value, bool) or not isinstance(value, int) or value < 0):
            raise ValueError(f"input for {var!r} must be a non-negative int, got {value!r}")
        if expected is Sort.LIST_NAT and not isinstance(value, tuple):
            raise ValueError(f"input for {var!r} must be a tuple of ints, got {value!r}")
        env[var] = value
    if len(env) > 1:
        raise ValueError(f"program is not single-input: free variables {sorted(env)}")
    return evaluate_env(program.term, env, budget)

"""Independent reference implementations the tests check the package against.

Nothing here reuses the package's generators or evaluator internals: the
brute-force term generator works on S-expression strings from its own copy
of the grammar, and the reference evaluator is a direct recursion with no
budget machinery.
"""

from functools import lru_cache


def insertion_sort(xs):
    """Reference sort for checking pivot-recursion programs."""
    out = []
    for x in xs:
        i = 0
        while i < len(out) and out[i] < x:
            i += 1
        out.insert(i, x)
    return tuple(out)


@lru_cache(maxsize=None)
def nat_terms_of_size(size, bound_vars=()):
    """All well-formed Nat-sorted S-expressions of exactly `size` nodes.

    Grammar: n | zero | bound vars | (succ t) | (add t t) | (mul t t)
    | (precnat base step target) where step sees acc and idx.
    """
    if size == 1:
        return ("n", "zero") + tuple(bound_vars)
    terms = []
    for sub in nat_terms_of_size(size - 1, bound_vars):
        terms.append(f"(succ {sub})")
    for a in range(1, size - 1):
        b = size - 1 - a
        for left in nat_terms_of_size(a, bound_vars):
            for right in nat_terms_of_size(b, bound_vars):
                terms.append(f"(add {left} {right})")
                terms.append(f"(mul {left} {right})")
    for a in range(1, size - 2):
        for b in range(1, size - 1 - a):
            c = size - 1 - a - b
            for base in nat_terms_of_size(a, bound_vars):
                for step in nat_terms_of_size(b, ("acc", "idx")):
                    for target in nat_terms_of_size(c, bound_vars):
                        terms.append(f"(precnat {base} {step} {target})")
    return tuple(terms)


def all_nat_terms(max_size):
    out = []
    for s in range(1, max_size + 1):
        out.extend(nat_terms_of_size(s))
    return out


def eval_nat(term, env):
    """Direct evaluator for the Nat fragment; no budget, no sharing with interp."""
    head = term.head
    if head == "zero":
        return 0
    if head in ("n", "acc", "idx", "x", "pivot"):
        return env[head]
    if head == "succ":
        return eval_nat(term.args[0], env) + 1
    if head == "add":
        return eval_nat(term.args[0], env) + eval_nat(term.args[1], env)
    if head == "mul":
        return eval_nat(term.args[0], env) * eval_nat(term.args[1], env)
    if head == "precnat":
        count = eval_nat(term.args[2], env)
        value = eval_nat(term.args[0], env)
        for i in range(count):
            inner = dict(env)
            inner["acc"] = value
            inner["idx"] = i
            value = eval_nat(term.args[1], inner)
        return value
    raise ValueError(f"outside the Nat fragment: {head!r}")

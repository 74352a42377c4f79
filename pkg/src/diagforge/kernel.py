"""The total kernel language: terms, sorts, S-expression syntax, typing.

Every constructor has a fixed rank; the pre-order sequence of ranks is the
tie-breaking key the enumeration and synthesis modules use inside a size
class, so the rank table here is normative for program indices.

Values are plain Python data: naturals are non-negative ints, booleans are
bools, and number lists are tuples of ints (tuples so values are hashable
and usable as fingerprint components).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Union

from .errors import (
    ParseError,
    SortMismatchError,
    UnboundVariableError,
    UnknownConstructorError,
)


class Sort(Enum):
    NAT = "nat"
    BOOL = "bool"
    LIST_NAT = "listnat"


Value = Union[int, bool, tuple]


@dataclass(frozen=True)
class Term:
    """One node of the abstract syntax tree."""

    head: str
    args: tuple["Term", ...] = ()

    def __repr__(self) -> str:
        return f"Term<{pretty(self)}>"


@dataclass(frozen=True)
class Param:
    """One argument position: its sort and the variables it binds.

    ``sort`` is None for the branches of ``if``, which share the sort of
    the whole expression.
    """

    sort: Sort | None
    binders: tuple[str, ...] = ()


@dataclass(frozen=True)
class OpSpec:
    name: str
    rank: int
    result: Sort | None  # None: polymorphic (if)
    params: tuple[Param, ...] = ()
    var_sort: Sort | None = None  # set for variable occurrences

    @property
    def arity(self) -> int:
        return len(self.params)

    @property
    def is_variable(self) -> bool:
        return self.var_sort is not None


_N, _B, _L = Sort.NAT, Sort.BOOL, Sort.LIST_NAT

OP_TABLE: tuple[OpSpec, ...] = (
    OpSpec("n", 0, _N, (), var_sort=_N),
    OpSpec("zero", 1, _N),
    OpSpec("succ", 2, _N, (Param(_N),)),
    OpSpec("add", 3, _N, (Param(_N), Param(_N))),
    OpSpec("mul", 4, _N, (Param(_N), Param(_N))),
    OpSpec("precnat", 5, _N, (Param(_N), Param(_N, ("acc", "idx")), Param(_N))),
    OpSpec("nil", 6, _L),
    OpSpec("cons", 7, _L, (Param(_N), Param(_L))),
    OpSpec("first", 8, _N, (Param(_L),)),
    OpSpec("rest", 9, _L, (Param(_L),)),
    OpSpec("append", 10, _L, (Param(_L), Param(_L))),
    OpSpec("len", 11, _N, (Param(_L),)),
    OpSpec("lt", 12, _B, (Param(_N), Param(_N))),
    OpSpec("if", 13, None, (Param(_B), Param(None), Param(None))),
    OpSpec("filter", 14, _L, (Param(_L), Param(_B, ("x",)))),
    OpSpec(
        "pivotrec",
        15,
        _L,
        (
            Param(_L),
            Param(_B, ("x", "pivot")),
            Param(_B, ("x", "pivot")),
            Param(_L, ("l", "pivot", "r")),
        ),
    ),
    OpSpec("x", 16, _N, (), var_sort=_N),
    OpSpec("acc", 17, _N, (), var_sort=_N),
    OpSpec("idx", 18, _N, (), var_sort=_N),
    OpSpec("pivot", 19, _N, (), var_sort=_N),
    OpSpec("l", 20, _L, (), var_sort=_L),
    OpSpec("r", 21, _L, (), var_sort=_L),
)

OPS: dict[str, OpSpec] = {spec.name: spec for spec in OP_TABLE}
VAR_SORTS: dict[str, Sort] = {s.name: s.var_sort for s in OP_TABLE if s.is_variable}

# Input variable per program input sort; `l` doubles as the input of
# list-consuming programs (it is the only list-sorted variable).
INPUT_VARS: dict[Sort, str] = {Sort.NAT: "n", Sort.LIST_NAT: "l"}


def size(t: Term) -> int:
    """Node count, variable occurrences included."""
    count = 0
    stack = [t]
    while stack:
        node = stack.pop()
        count += 1
        stack.extend(node.args)
    return count


def rank_seq(t: Term) -> tuple[int, ...]:
    """Pre-order sequence of constructor ranks; the intra-size sort key."""
    out: list[int] = []
    stack = [t]
    while stack:
        node = stack.pop()
        out.append(OPS[node.head].rank)
        stack.extend(reversed(node.args))
    return tuple(out)


def canonical_key(t: Term) -> tuple[int, tuple[int, ...]]:
    return (size(t), rank_seq(t))


def subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.args))


# ---------------------------------------------------------------------------
# S-expression syntax


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read_form(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise ParseError("unexpected end of input")
    tok = tokens[pos]
    if tok == "(":
        items = []
        pos += 1
        while True:
            if pos >= len(tokens):
                raise ParseError("unbalanced form: missing ')'")
            if tokens[pos] == ")":
                return items, pos + 1
            item, pos = _read_form(tokens, pos)
            items.append(item)
    if tok == ")":
        raise ParseError("unexpected ')'")
    return tok, pos + 1


def _form_to_term(form) -> Term:
    if isinstance(form, str):
        spec = OPS.get(form)
        if spec is None:
            raise UnknownConstructorError(form)
        if spec.arity != 0:
            raise ParseError(f"{form!r} takes {spec.arity} arguments, got none")
        return Term(form)
    if not form:
        raise ParseError("empty form '()'")
    head = form[0]
    if not isinstance(head, str):
        raise ParseError("form head must be a constructor name")
    spec = OPS.get(head)
    if spec is None:
        raise UnknownConstructorError(head)
    args = form[1:]
    if spec.arity == 0:
        raise ParseError(f"{head!r} takes no arguments; write it bare")
    if len(args) != spec.arity:
        raise ParseError(f"{head!r} takes {spec.arity} arguments, got {len(args)}")
    return Term(head, tuple(_form_to_term(a) for a in args))


def parse(text: str) -> Term:
    """Parse a canonical S-expression into a term.

    Arity is enforced structurally; scoping and sorts are the job of
    check_well_formed.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input")
    form, pos = _read_form(tokens, 0)
    if pos != len(tokens):
        raise ParseError(f"trailing tokens after form: {' '.join(tokens[pos:])!r}")
    return _form_to_term(form)


def pretty(t: Term) -> str:
    """Canonical single-spaced S-expression; parse(pretty(t)) == t."""
    if not t.args:
        return t.head
    return "(" + t.head + " " + " ".join(pretty(a) for a in t.args) + ")"


# ---------------------------------------------------------------------------
# Values


def sort_of_value(v: Value) -> Sort:
    if isinstance(v, bool):
        return Sort.BOOL
    if isinstance(v, int):
        return Sort.NAT
    if isinstance(v, tuple):
        return Sort.LIST_NAT
    raise ParseError(f"not a kernel value: {v!r}")


def _form_to_value(form) -> Value:
    if isinstance(form, str):
        if form == "true":
            return True
        if form == "false":
            return False
        if form.isdigit():
            return int(form)
        raise ParseError(f"not a value atom: {form!r}")
    out = []
    for item in form:
        if not isinstance(item, str) or not item.isdigit():
            raise ParseError("list values hold plain naturals")
        out.append(int(item))
    return tuple(out)


def parse_value(text: str) -> Value:
    """Read one value: a natural, true/false, or a list like (3 1 2)."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty value")
    form, pos = _read_form(tokens, 0)
    if pos != len(tokens):
        raise ParseError(f"trailing tokens after value: {' '.join(tokens[pos:])!r}")
    return _form_to_value(form)


def parse_value_list(text: str) -> tuple[Value, ...]:
    """Read a parenthesized list of values, e.g. "(0 1 2)" or "((0 1) ())"."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty value list")
    form, pos = _read_form(tokens, 0)
    if pos != len(tokens) or isinstance(form, str):
        raise ParseError("expected a parenthesized list of values")
    return tuple(_form_to_value(item) for item in form)


def format_value(v: Value) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return "(" + " ".join(str(x) for x in v) + ")"


# ---------------------------------------------------------------------------
# Typing


@dataclass(frozen=True)
class TypedProgram:
    """A term together with its checked sort and allowed free variables."""

    term: Term
    sort: Sort
    free_vars: frozenset[str]

    def __repr__(self) -> str:
        return f"TypedProgram<{pretty(self.term)} : {self.sort.value}>"


def infer_sort(t: Term, scope: frozenset[str] | set[str], path: tuple[int, ...] = ()) -> Sort:
    """Infer the unique sort of a term, checking scoping along the way.

    Binders extend the ambient scope lexically (inner binders shadow), so
    e.g. a precnat step may still mention n.
    """
    spec = OPS.get(t.head)
    if spec is None:
        raise UnknownConstructorError(t.head)
    if spec.is_variable:
        if t.head not in scope:
            raise UnboundVariableError(t.head, path)
        return spec.var_sort
    if len(t.args) != spec.arity:
        raise ParseError(f"{t.head!r} takes {spec.arity} arguments, got {len(t.args)}")
    if t.head == "if":
        cond = infer_sort(t.args[0], scope, path + (0,))
        if cond is not Sort.BOOL:
            raise SortMismatchError(path + (0,), Sort.BOOL, cond)
        then = infer_sort(t.args[1], scope, path + (1,))
        other = infer_sort(t.args[2], scope, path + (2,))
        if then is not other:
            raise SortMismatchError(path + (2,), then, other)
        return then
    for i, param in enumerate(spec.params):
        inner_scope = scope if not param.binders else frozenset(scope) | set(param.binders)
        found = infer_sort(t.args[i], inner_scope, path + (i,))
        if found is not param.sort:
            raise SortMismatchError(path + (i,), param.sort, found)
    return spec.result


def check_well_formed(t: Term, expected: Sort, free_vars: Iterable[str]) -> TypedProgram:
    """Accept t iff it has sort `expected` using only the given free variables."""
    allowed = frozenset(free_vars)
    unknown = allowed - VAR_SORTS.keys()
    if unknown:
        raise ValueError(f"not kernel variables: {sorted(unknown)}")
    found = infer_sort(t, allowed)
    if found is not expected:
        raise SortMismatchError((), expected, found)
    return TypedProgram(t, expected, allowed)

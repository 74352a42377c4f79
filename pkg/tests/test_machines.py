"""Diagonal construction, machine extension, and witness tables."""

import json

import pytest

from diagforge.enumeration import Tier
from diagforge.errors import ResourceExhaustedError
from diagforge.interp import EvalBudget
from diagforge.machines import (
    Base,
    DiagonalOf,
    Extend,
    Witness,
    diagonal,
    extend,
    function_at,
    iterate,
    machine_stream,
    witness_table,
    witnesses_jsonl,
)

BASE = Base(Tier.NATFN)


def test_base_stream_starts_with_identity_and_zero():
    f1 = function_at(BASE, 1)
    f2 = function_at(BASE, 2)
    assert [f1(k) for k in range(5)] == [0, 1, 2, 3, 4]
    assert [f2(k) for k in range(5)] == [0, 0, 0, 0, 0]


def test_diagonal_values_against_base():
    g = diagonal(BASE)
    assert g(1) == 2  # f_1 is the identity
    assert g(2) == 1  # f_2 is constant zero
    assert g(0) == g(1)
    assert isinstance(g.provenance, DiagonalOf)


def test_diagonal_is_plus_one_pointwise():
    g = diagonal(BASE)
    for n in range(1, 201):
        assert g(n) == function_at(BASE, n)(n) + 1


def test_witness_table_rows():
    rows = witness_table(BASE, 2)
    assert [(w.index, w.fn_at_n, w.g_at_n) for w in rows] == [(1, 1, 2), (2, 0, 1)]
    for w in witness_table(BASE, 500):
        assert w.g_at_n == w.fn_at_n + 1
        assert w.g_at_n != w.fn_at_n


def test_witness_row_invariant_is_enforced():
    with pytest.raises(ValueError):
        Witness(1, 3, 3)


def test_extend_prepends():
    g = diagonal(BASE)
    m = extend(BASE, g)
    assert function_at(m, 1) is g
    for k in range(1, 101):
        assert function_at(m, k + 1)(k) == function_at(BASE, k)(k)
    g2 = diagonal(m)
    assert g2(1) == g(1) + 1
    rows = witness_table(m, 1)
    assert rows[0] == Witness(1, g(1), g(1) + 1)


def test_extend_twice_prepends_in_order():
    g1 = diagonal(BASE)
    m1 = extend(BASE, g1)
    g2 = diagonal(m1)
    m2 = extend(m1, g2)
    assert function_at(m2, 1) is g2
    assert function_at(m2, 2) is g1
    assert function_at(m2, 3)(7) == function_at(BASE, 1)(7)


def test_machine_stream_matches_function_at():
    stream = machine_stream(extend(BASE, diagonal(BASE)))
    for k in range(1, 20):
        assert next(stream)(k) == function_at(extend(BASE, diagonal(BASE)), k)(k)


def test_iterate_unrolls_extension():
    m1, gs = iterate(BASE, 1)
    assert isinstance(m1, Extend) and m1.inner == BASE
    assert gs[0](1) == diagonal(BASE)(1)

    _, gs = iterate(BASE, 5)
    for i in range(1, 5):
        assert gs[i](1) == gs[i - 1](1) + 1
    tables = [[g(n) for n in range(1, 6)] for g in gs]
    for i in range(5):
        for j in range(i + 1, 5):
            assert tables[i] != tables[j]


def test_memoization_is_transparent():
    g = diagonal(BASE)
    assert g(7) == g(7)
    assert witness_table(BASE, 10) == witness_table(BASE, 10)


def test_concurrent_queries_agree():
    from concurrent.futures import ThreadPoolExecutor

    g = diagonal(BASE)
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(g, [n % 40 for n in range(400)]))
    assert results == [g(n % 40) for n in range(400)]


def test_budget_exhaustion_reports_index():
    with pytest.raises(ResourceExhaustedError) as excinfo:
        witness_table(BASE, 3, EvalBudget(max_steps=1))
    assert excinfo.value.index == 3  # f_3 = (succ n) needs two steps


def test_witnesses_jsonl_format():
    lines = witnesses_jsonl(witness_table(BASE, 2)).splitlines()
    assert [json.loads(line) for line in lines] == [
        {"index": 1, "fn_at_n": 1, "g_at_n": 2},
        {"index": 2, "fn_at_n": 0, "g_at_n": 1},
    ]

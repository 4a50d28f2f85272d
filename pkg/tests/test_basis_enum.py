import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpbasis.basis_enum import (
    BasisSpec, GradedCount, _chained_max, _charges_from_dual,
    _row_bounds, enumerate_basis, graded_count, validate_monomial,
)
from qpbasis.modules import ModuleHandle
from qpbasis.quasiparticle import QPFactor, QPMonomial


def handle(n, c0, cj, j, depth=8):
    return ModuleHandle.from_weight(n, c0, cj, j, depth)


def gap_partitions(total, min_part, gap):
    """Partitions of total into parts >= min_part with consecutive
    parts differing by at least gap; independent brute force."""
    def rec(rest, largest_allowed):
        if rest == 0:
            return 1
        count = 0
        for p in range(min(rest, largest_allowed), min_part - 1, -1):
            count += rec(rest - p, p - gap)
        return count
    return rec(total, total)


def degree_counts(spec, N):
    gc = graded_count(spec)
    out = [0] * (N + 1)
    for (ct, d), cnt in gc.table.items():
        if -d <= N:
            out[-d] += cnt
    return out


def test_rr_level_one_vacuum():
    spec = BasisSpec(handle(1, 1, 0, 0), 4)
    assert degree_counts(spec, 4) == [1, 1, 1, 1, 2]
    for d in range(0, 5):
        assert degree_counts(spec, 4)[d] == gap_partitions(d, 1, 2)


def test_rr_level_one_other_sector():
    spec = BasisSpec(handle(1, 0, 1, 1), 4)
    assert degree_counts(spec, 4) == [1, 0, 1, 1, 1]
    for d in range(0, 5):
        assert degree_counts(spec, 4)[d] == gap_partitions(d, 2, 2)


def test_rr_deeper_window():
    spec = BasisSpec(handle(1, 1, 0, 0), 10)
    got = degree_counts(spec, 10)
    want = [gap_partitions(d, 1, 2) for d in range(11)]
    assert got == want == [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6]


def test_charge_capped_by_level():
    spec = BasisSpec(handle(1, 1, 0, 0), 6)
    for mono in enumerate_basis(spec):
        assert all(f.charge <= 1 for f in mono.factors)
    spec2 = BasisSpec(handle(1, 2, 0, 0), 6)
    assert any(any(f.charge == 2 for f in mono.factors)
               for mono in enumerate_basis(spec2))
    assert all(all(f.charge <= 2 for f in mono.factors)
               for mono in enumerate_basis(spec2))


def test_empty_monomial_included():
    spec = BasisSpec(handle(2, 1, 1, 2), 3)
    monos = enumerate_basis(spec)
    assert QPMonomial([]) in monos
    gc = graded_count(spec)
    assert gc.get((0, 0), 0) == 1


def test_flavors_same_table():
    h = handle(2, 1, 1, 1)
    t1 = graded_count(BasisSpec(h, 4, "type1"))
    t2 = graded_count(BasisSpec(h, 4, "type2"))
    assert t1 == t2


def test_monotone_in_floor():
    h = handle(2, 2, 0, 0)
    shallow = set(enumerate_basis(BasisSpec(h, 3)))
    deep = set(enumerate_basis(BasisSpec(h, 4)))
    assert shallow <= deep


def test_validator_accepts_all_emitted():
    for h in [handle(1, 2, 0, 0), handle(2, 1, 1, 1), handle(2, 0, 2, 2)]:
        spec = BasisSpec(h, 4)
        monos = enumerate_basis(spec)
        assert len(monos) == len(set(monos))
        for mono in monos:
            validate_monomial(spec, mono)


def test_validator_rejects():
    spec = BasisSpec(handle(1, 1, 0, 0), 4)
    with pytest.raises(ValueError):
        validate_monomial(spec, QPMonomial([QPFactor(1, 2, -4)]))
    with pytest.raises(ValueError):
        validate_monomial(spec, QPMonomial([QPFactor(1, 1, 0)]))
    with pytest.raises(ValueError):
        validate_monomial(
            spec, QPMonomial([QPFactor(1, 1, -2), QPFactor(1, 1, -1)]))
    with pytest.raises(ValueError):
        validate_monomial(spec, QPMonomial([QPFactor(1, 1, -5)]))


def test_level_two_vacuum_has_charge_two_rows():
    spec = BasisSpec(handle(1, 2, 0, 0), 5)
    best = {}
    for mono in enumerate_basis(spec):
        for f in mono.factors:
            if f.charge == 2:
                best[len(mono.factors)] = max(
                    best.get(len(mono.factors), -99), f.degree)
    # a lone charge-2 particle reaches degree -2
    assert best.get(1) == -2
    # next to a second (larger-or-equal charge) particle it drops by 4
    pair = [m for m in enumerate_basis(spec)
            if [f.charge for f in m.factors] == [2, 2]]
    assert all(m.factors[0].degree <= m.factors[1].degree - 4
               for m in pair)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.lists(
    st.lists(st.integers(0, 3), min_size=2, max_size=2), min_size=1,
    max_size=3))
def test_dual_charge_energy_identity(n, cols):
    # the chained row bounds of a dual-charge matrix sum to minus the
    # quadratic form plus the cross terms, minus the sector shifts
    h = handle(n, 1, 1, 1)
    cols = [tuple(sorted(col, reverse=True)) for col in cols[:n]]
    while len(cols) < n:
        cols.append((0, 0))
    total = 0
    expected = 0
    prev_col = (0, 0)
    prev_charges = []
    for i in range(1, n + 1):
        col = cols[i - 1]
        charges = _charges_from_dual(col)
        bounds = _row_bounds(h, i, charges, prev_charges)
        total += _chained_max(charges, bounds)
        expected -= sum(v * v for v in col)
        expected += sum(v * p for v, p in zip(col, prev_col))
        expected -= sum(
            sum(1 for s in range(min(m, h.c)) if h.sectors[s] == i)
            for m in charges)
        prev_col = col
        prev_charges = charges
    assert total == expected


def test_canonical_order_deterministic():
    spec = BasisSpec(handle(2, 1, 1, 1), 3)
    a = enumerate_basis(spec)
    b = enumerate_basis(spec)
    assert a == b
    n = spec.handle.n
    keys = [(m.color_type(n), tuple(f.charge for f in m.factors),
             tuple(f.degree for f in m.factors)) for m in a]
    assert len(keys) == len(set(keys))

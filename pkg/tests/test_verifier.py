from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qpbasis.modules import (L1Basis, ModuleHandle, ModuleVector,
                             highest_weight_vector)
from qpbasis.fock import FockMonomial
from qpbasis.lattice import LatticeElt
from qpbasis.qarith import Scalar
from qpbasis.verifier import (RankReport, RelationCheck, check_main_theorem,
                              check_relation, exact_rank, oracle_span,
                              relation_ids)


def handle(n, c0, cj, j, depth=8):
    return ModuleHandle.from_weight(n, c0, cj, j, depth)


def test_oracle_span_trivial_key():
    h = handle(1, 1, 0, 0)
    vecs = oracle_span(h, ((0,), 0))
    assert len(vecs) == 1
    assert vecs[0] == highest_weight_vector(h)


def test_oracle_span_single_mode():
    h = handle(1, 1, 0, 0)
    vecs = oracle_span(h, ((1,), -1))
    assert len(vecs) == 1
    assert exact_rank(vecs) == 1


def test_oracle_span_degree_zero_positive_counts():
    h = handle(1, 1, 0, 0)
    vecs = oracle_span(h, ((1,), 0))
    assert exact_rank(vecs) == 0


def _unit_vector(keys, coeffs):
    v = ModuleVector()
    for k, c in zip(keys, coeffs):
        v.add_term(k, c)
    return v


def _keys(n_keys):
    vac = FockMonomial.vacuum()
    return [(L1Basis(vac, LatticeElt((k,)), 0),) for k in range(n_keys)]


def test_exact_rank_trivial_cases():
    assert exact_rank([]) == 0
    keys = _keys(2)
    v = _unit_vector(keys, [Scalar.one(), Scalar.q_power(1)])
    assert exact_rank([v, v, v]) == 1
    w = v.scale(Scalar.q_power(1) + Scalar.q_power(-1))
    assert exact_rank([v, w]) == 1
    u = _unit_vector(keys, [Scalar.one(), Scalar.q_power(2)])
    assert exact_rank([v, u]) == 2


def test_exact_rank_zero_vectors_ignored():
    keys = _keys(1)
    v = _unit_vector(keys, [Scalar.one()])
    assert exact_rank([ModuleVector(), v]) == 1


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3),
                min_size=1, max_size=4))
def test_exact_rank_matches_fraction_rank(rows):
    # integer matrices: the symbolic rank must agree with the rank of
    # the same matrix over Q
    keys = _keys(3)
    vecs = [_unit_vector(keys, [Scalar.from_fraction(Fraction(x))
                                for x in row]) for row in rows]
    import fractions
    mat = [[fractions.Fraction(x) for x in row] for row in rows]
    rank = 0
    r = 0
    for c in range(3):
        piv = next((rr for rr in range(r, len(mat)) if mat[rr][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for rr in range(r + 1, len(mat)):
            if mat[rr][c]:
                f = mat[rr][c] / mat[r][c]
                for cc in range(c, 3):
                    mat[rr][cc] -= f * mat[r][cc]
        r += 1
        rank += 1
    assert exact_rank(vecs) == rank


def test_main_theorem_small_vacuum():
    h = handle(1, 1, 0, 0, 8)
    reports = check_main_theorem(h, 4)
    assert reports
    for r in reports:
        assert r.ok(), (r.key, r.flavor, r.oracle_rank,
                        r.predicted_count, r.basis_rank)
        assert not r.truncated
    # per-degree totals reproduce the gap >= 2, parts >= 1 counts
    totals = {}
    for r in reports:
        if r.flavor == "type1":
            totals[r.key[1]] = totals.get(r.key[1], 0) + r.predicted_count
    assert [totals.get(-d, 0) for d in range(5)] == [1, 1, 1, 1, 2]


def test_main_theorem_other_sector():
    h = handle(1, 0, 1, 1, 8)
    reports = check_main_theorem(h, 4)
    assert all(r.ok() for r in reports)
    totals = {}
    for r in reports:
        if r.flavor == "type2":
            totals[r.key[1]] = totals.get(r.key[1], 0) + r.predicted_count
    assert [totals.get(-d, 0) for d in range(5)] == [1, 0, 1, 1, 1]


def test_main_theorem_flavors_agree():
    h = handle(1, 2, 0, 0, 7)
    reports = check_main_theorem(h, 3)
    by_flavor = {"type1": {}, "type2": {}}
    for r in reports:
        by_flavor[r.flavor][r.key] = r.basis_rank
    assert by_flavor["type1"] == by_flavor["type2"]


def test_rank_report_invariants():
    r = RankReport(((1,), -1), 1, 1, 1, "type1")
    assert r.ok()
    assert r.to_json()["ok"] is True
    bad = RankReport(((1,), -1), 2, 1, 1, "type1")
    assert not bad.ok()
    trunc = RankReport(((1,), -1), 1, 1, 1, "type1", truncated=True)
    assert not trunc.ok()


def test_relation_ids_catalog():
    assert relation_ids() == ["R%d" % k for k in range(1, 12)]
    with pytest.raises(ValueError):
        check_relation("R99")


def test_relation_check_shape():
    chk = check_relation("R3")
    assert isinstance(chk, RelationCheck)
    assert chk.ok() and chk.witness is None
    assert chk.to_json()["status"] == "pass"


def test_fast_relations_pass():
    for rid in ("R3", "R6", "R9", "R10"):
        chk = check_relation(rid)
        assert chk.ok(), (rid, chk.witness)

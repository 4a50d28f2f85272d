from fractions import Fraction

import pytest

from qpbasis.modules import (
    ModuleHandle, ModuleVector, act_xbar_mode, act_xplus_mode,
    colorweight_of, degree_of, highest_weight_vector,
)
from qpbasis.qarith import Scalar
from qpbasis.quasiparticle import (
    QPFactor, QPMonomial, apply_monomial, apply_qp_mode, compare_lt,
    compare_prec, compile_qp1, compile_qp2,
)


def Q(k, c=1):
    return Scalar.q_power(k, c)


def handle(n, c0, cj, j, depth=8):
    return ModuleHandle.from_weight(n, c0, cj, j, depth)


def test_charge_one_reduces_to_plain_currents():
    h = handle(1, 1, 1, 1)
    v = highest_weight_vector(h)
    w = act_xplus_mode(h, 1, -1, v)
    for u in (v, w):
        for r in (-3, -2, -1):
            f1 = QPFactor(1, 1, r, "type1")
            f2 = QPFactor(1, 1, r, "type2")
            assert apply_qp_mode(h, f1, r, u) == act_xplus_mode(h, 1, r, u)
            assert apply_qp_mode(h, f2, r, u) == act_xbar_mode(h, 1, r, u)


def test_compile_tuple_survival():
    h = handle(1, 2, 0, 0)
    words = compile_qp1(h, 1, 2)
    assert len(words) == 1
    assert words[0].tuple_ls == (2, 1)
    assert words[0].scalar == Scalar.one() - Q(4)
    # all four tuples compile for type 2, three of them with zero scalar
    words2 = compile_qp2(h, 1, 2)
    assert len(words2) == 4
    nz = [w for w in words2 if w.scalar]
    assert len(nz) == 1 and nz[0].tuple_ls == (2, 1)


def test_integrability_structural_type1():
    assert compile_qp1(handle(1, 1, 0, 0), 1, 2) == []
    assert compile_qp1(handle(1, 2, 0, 0), 1, 3) == []
    assert compile_qp1(handle(2, 1, 1, 1), 2, 3) == []


def test_integrability_modes_annihilate():
    h = handle(1, 1, 0, 0, depth=6)
    v = highest_weight_vector(h)
    w = act_xplus_mode(h, 1, -1, v)
    for u in (v, w):
        for r in range(-5, 1):
            for flavor in ("type1", "type2"):
                f = QPFactor(1, 2, r, flavor)
                assert apply_qp_mode(h, f, r, u).is_zero()


def test_types_agree_on_hwv_charge_one():
    for h in [handle(1, 2, 0, 0), handle(1, 1, 1, 1), handle(2, 2, 0, 0)]:
        v = highest_weight_vector(h)
        for i in range(1, h.n + 1):
            for r in (-5, -4, -3):
                a = apply_qp_mode(h, QPFactor(i, 1, r, "type1"), r, v)
                b = apply_qp_mode(h, QPFactor(i, 1, r, "type2"), r, v)
                assert a == b, (h, i, r)


def test_type2_proportional_to_type1_on_hwv():
    # the dressed charge-2 current differs from the bare one on the
    # highest weight vector by the constant 1/(1 - q^2) picked up when
    # the inner dressing crosses the inner current
    const = (Scalar.one() - Q(2)).inverse()
    for h in [handle(1, 2, 0, 0), handle(2, 2, 0, 0)]:
        v = highest_weight_vector(h)
        for i in range(1, h.n + 1):
            for r in (-5, -4):
                a = apply_qp_mode(h, QPFactor(i, 2, r, "type1"), r, v)
                b = apply_qp_mode(h, QPFactor(i, 2, r, "type2"), r, v)
                assert b == a.scale(const), (h, i, r)


def test_type2_matches_mode_convolution_oracle():
    # xbar_2(z) = xbar(z) xbar(z q^2), so its mode r is the finite sum
    # sum_{r1 + r2 = r} q^{-2 r2 - 2} xbar(r1) xbar(r2); compare with
    # the compiled word action on a battery
    h = handle(1, 2, 0, 0, depth=10)
    v0 = highest_weight_vector(h)
    battery = [v0, act_xbar_mode(h, 1, -1, v0)]
    for v in battery:
        for r in (-4, -5):
            total = ModuleVector()
            for r2 in range(-12, 6):
                inner = act_xbar_mode(h, 1, r2, v)
                if inner.is_zero():
                    continue
                outer = act_xbar_mode(h, 1, r - r2, inner)
                total = total + outer.scale(Q(-2 * r2 - 2))
            direct = apply_qp_mode(h, QPFactor(1, 2, r, "type2"), r, v)
            assert total == direct, r


def test_charge_two_boundary_on_level_two():
    # n=1, c=2, Lambda = 2 Lambda_0: the deepest vanishing mode of the
    # charge-2 particle on the highest weight vector
    h = handle(1, 2, 0, 0, depth=10)
    v = highest_weight_vector(h)
    f = QPFactor(1, 2, -2, "type1")
    out = apply_qp_mode(h, f, -2, v)
    assert not out.is_zero()
    assert degree_of(h, out) == -2
    assert colorweight_of(h, out) == (2,)
    for r in (-1, 0, 1):
        assert apply_qp_mode(h, QPFactor(1, 2, r, "type1"), r, v).is_zero()


def test_two_variable_windowed_oracle():
    # charge-2 modes recomputed through the prefactored two-variable
    # product of plain modes: sum_b q^{2b} P(T-b, b) with
    # P(a,b) = Q(a,b) - q^2 Q(a+1, b-1),
    # Q(a,b) the z1^a z2^b coefficient of x(z1) x(z2) v
    h = handle(1, 2, 0, 0, depth=16)
    v = highest_weight_vector(h)

    def xz(e, u):
        return act_xplus_mode(h, 1, -e - 1, u)

    def Qc(a, b):
        return xz(a, xz(b, v))

    for r in (-4, -5, -6):
        T = -r - 2
        total = ModuleVector()
        top_used = None
        # keep the scan well inside the depth floor: entries at index b
        # need intermediate vectors of depth b + 1, and floor-truncated
        # intermediates would poison the tail
        for b in range(0, 12):
            a = T - b
            p = Qc(a, b) + Qc(a + 1, b - 1).scale(-Q(2))
            if not p.is_zero():
                top_used = b
                total = total + p.scale(Q(2 * b))
        # the prefactored product has bounded powers of z2/z1, so the
        # window must close well before the scan ends
        assert top_used is not None and top_used < 10
        direct = apply_qp_mode(h, QPFactor(1, 2, r, "type1"), r, v)
        expect = direct
        assert total == expect, r


def test_monomial_validation_and_views():
    f = [QPFactor(2, 1, -1), QPFactor(1, 1, -3), QPFactor(1, 2, -2)]
    mono = QPMonomial(f)
    assert mono.color_type(2) == (3, 1)
    assert mono.charge_type(1) == (1, 2)
    assert mono.dual_charge_type(1) == (2, 1)
    assert mono.color_degree_type(2) == (-5, -1)
    with pytest.raises(ValueError):
        QPMonomial([QPFactor(1, 1, -1), QPFactor(2, 1, -1)])
    with pytest.raises(ValueError):
        QPMonomial([QPFactor(1, 2, -1), QPFactor(1, 1, -9)])
    with pytest.raises(ValueError):
        QPMonomial([QPFactor(1, 1, -1), QPFactor(1, 1, -5)])
    QPMonomial([QPFactor(1, 1, -5), QPFactor(1, 1, -1)])
    QPMonomial([QPFactor(1, 1, -9), QPFactor(1, 2, -1)])


def test_orders():
    a = QPMonomial([QPFactor(1, 1, -1), QPFactor(1, 2, -3)])
    b = QPMonomial([QPFactor(1, 1, -2), QPFactor(1, 1, -1),
                    QPFactor(1, 1, -1)])
    assert compare_lt(a, a, 1) == 0
    r1 = compare_lt(a, b, 1)
    r2 = compare_lt(b, a, 1)
    assert r1 == -r2 and r1 != 0
    # prec implies lt on a same-color-type pair with dominated sums
    x = QPMonomial([QPFactor(1, 1, -4), QPFactor(1, 1, -1)])
    y = QPMonomial([QPFactor(1, 1, -3), QPFactor(1, 1, -1)])
    if compare_prec(x, y, 1):
        assert compare_lt(x, y, 1) < 0
    assert not compare_prec(a, a, 1)
    with pytest.raises(ValueError):
        compare_lt(a, QPMonomial([QPFactor(1, 1, -1)]), 1)


def test_grading_of_qp_modes():
    h = handle(2, 1, 1, 1, depth=10)
    v = highest_weight_vector(h)
    f = QPFactor(1, 2, -3, "type2")
    out = apply_qp_mode(h, f, -3, v)
    assert not out.is_zero()
    assert degree_of(h, out) == -3
    assert colorweight_of(h, out) == (2, 0)
    mono = QPMonomial([QPFactor(2, 1, -2), QPFactor(1, 2, -3)])
    w = apply_monomial(h, mono, v)
    if not w.is_zero():
        assert degree_of(h, w) == -5
        assert colorweight_of(h, w) == (2, 1)

"""Quasi-particle operators of both types and monomial combinatorics.

A charge-m quasi-particle current is compiled, per coproduct summand
tuple, into a closed-form normal-ordered vertex word: per-slot op lists
plus an exact scalar collecting the substituted prefactor and all
same-color contraction factors.  Applying a compiled word is finite and
exact, so no multi-variable series truncation ever enters the basis
pipeline.
"""

from fractions import Fraction

from .modules import (ModuleVector, SlotOp, act_tensor_word,
                      act_tensor_word_series)
from .qarith import Scalar


class QPFactor:
    """One quasi-particle: color, charge m >= 1, degree (mode index),
    flavor 'type1' or 'type2'."""

    __slots__ = ("color", "charge", "degree", "flavor")

    def __init__(self, color, charge, degree, flavor="type1"):
        if charge < 1:
            raise ValueError("charge must be >= 1")
        if flavor not in ("type1", "type2"):
            raise ValueError("unknown flavor %r" % flavor)
        self.color = color
        self.charge = charge
        self.degree = degree
        self.flavor = flavor

    def key(self):
        return (self.color, self.charge, self.degree, self.flavor)

    def __eq__(self, other):
        return isinstance(other, QPFactor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "QPFactor(color=%d, charge=%d, degree=%d, %s)" % (
            self.color, self.charge, self.degree, self.flavor)


class QPMonomial:
    """Ordered product of quasi-particles, stored left to right as
    operators (the rightmost factor acts first).

    Constraints: colors nondecreasing from right to left (so the
    rightmost factors have color 1), within a color charges
    nonincreasing from right to left (particle 1, the rightmost of its
    color, carries the largest charge), within equal charge degrees
    nonincreasing from right to left.
    """

    __slots__ = ("factors",)

    def __init__(self, factors, validate=True):
        self.factors = tuple(factors)
        if validate:
            self._validate()

    def _validate(self):
        fs = list(reversed(self.factors))  # right-to-left
        for a, b in zip(fs, fs[1:]):
            if b.color < a.color:
                raise ValueError("colors must be nondecreasing right to left")
            if b.color == a.color:
                if b.charge > a.charge:
                    raise ValueError(
                        "charges must be nonincreasing right to left")
                if b.charge == a.charge and b.degree > a.degree:
                    raise ValueError(
                        "degrees must be nonincreasing right to left")

    def color_factors(self, i):
        """Factors of color i in particle order (particle 1 is the
        rightmost factor of that color)."""
        return [f for f in reversed(self.factors) if f.color == i]

    def charge_type(self, i):
        """(m_{r^{(1)},i}, ..., m_{1,i}) written largest particle
        index first, matching the display convention."""
        charges = [f.charge for f in self.color_factors(i)]
        return tuple(reversed(charges))

    def dual_charge_type(self, i, c=None):
        charges = [f.charge for f in self.color_factors(i)]
        top = max(charges, default=0)
        if c is not None:
            top = max(top, 0)
        return tuple(sum(1 for m in charges if m >= k)
                     for k in range(1, top + 1))

    def color_type(self, n):
        return tuple(sum(f.charge for f in self.factors if f.color == i)
                     for i in range(1, n + 1))

    def color_degree_type(self, n):
        return tuple(sum(f.degree for f in self.factors if f.color == i)
                     for i in range(1, n + 1))

    def total_degree(self):
        return sum(f.degree for f in self.factors)

    def __eq__(self, other):
        return isinstance(other, QPMonomial) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return "QPMonomial(%r)" % (list(self.factors),)

    def to_json(self):
        return {"factors": [{"color": f.color, "charge": f.charge,
                             "degree": f.degree} for f in self.factors]}


class VertexWord:
    """One compiled coproduct-summand word: per-slot normal-ordered op
    lists for the x-part, optional per-slot k-dressing ops, and the
    exact scalar prefactor."""

    __slots__ = ("scalar", "x_slots", "k_slots", "tuple_ls")

    def __init__(self, scalar, x_slots, k_slots, tuple_ls):
        self.scalar = scalar
        self.x_slots = x_slots
        self.k_slots = k_slots
        self.tuple_ls = tuple_ls


def _contraction_scalar(ops):
    """Product of same-color contraction factors of one slot's op list:
    for positions a < b, the annihilation half of op a crosses the
    creation half of op b.  x-x pairs contribute
    (1 - x)(1 - q^{-2} x), x-phi pairs (1 - q^{-5/2} x)/(1 - q^{3/2} x),
    with x = v^{voff_b - voff_a} the full argument ratio."""
    out = Scalar.one()
    for a in range(len(ops)):
        if ops[a].kind != "x":
            continue
        for b in range(a + 1, len(ops)):
            d = ops[b].voff - ops[a].voff
            ratio = Scalar.v_power(d)
            if ops[b].kind == "x":
                f = (Scalar.one() - ratio) \
                    * (Scalar.one() - Scalar.q_power(-2) * ratio)
            elif ops[b].kind == "phi":
                num = Scalar.one() - Scalar.q_power(Fraction(-5, 2)) * ratio
                den = Scalar.one() - Scalar.q_power(Fraction(3, 2)) * ratio
                f = num / den
            else:
                continue
            out = out * f
            if not out:
                return out
    return out


def _tuple_words(h, i, m, with_k):
    """Compile all coproduct tuples (l_1..l_m) in {1..c}^m for the
    charge-m current of color i, particle p at argument z q^{2(p-1)}."""
    c = h.c
    words = []
    # substituted prefactor: prod_{r<s} (1 - q^{2(1+s-r)}) for type 1;
    # type 2 divides by prod_{r<s} (1 - q^{2(s-r)})
    pref = Scalar.one()
    for r in range(1, m + 1):
        for s in range(r + 1, m + 1):
            pref = pref * (Scalar.one() - Scalar.q_power(2 * (1 + s - r)))
            if with_k:
                pref = pref / (Scalar.one() - Scalar.q_power(2 * (s - r)))

    def rec(ls):
        if len(ls) == m:
            x_slots = [[] for _ in range(c)]
            for p, l in enumerate(ls, start=1):
                base = 4 * (p - 1)
                for s in range(1, l):
                    x_slots[s - 1].append(SlotOp("phi", i, base + 2 * s - 1))
                x_slots[l - 1].append(SlotOp("x", i, base + 2 * (l - 1)))
            scalar = pref
            for ops in x_slots:
                scalar = scalar * _contraction_scalar(ops)
                if not scalar:
                    break
            k_slots = None
            if with_k:
                k_slots = [[] for _ in range(c)]
                for p in range(1, m + 1):
                    for s in range(1, c + 1):
                        k_slots[s - 1].append(
                            SlotOp("k", i, 4 * (p - 1), slot=s))
            words.append(VertexWord(scalar, tuple(map(tuple, x_slots)),
                                    tuple(map(tuple, k_slots))
                                    if k_slots else None,
                                    tuple(ls)))
            return
        for l in range(1, c + 1):
            rec(ls + [l])

    rec([])
    return words


def compile_qp1(h, i, m):
    """Compiled word list of the type-1 charge-m current: one word per
    surviving (strictly decreasing) tuple; empty for m > c."""
    ck = ("qp1", i, m)
    if ck in h.cache:
        return h.cache[ck]
    words = [w for w in _tuple_words(h, i, m, with_k=False) if w.scalar]
    h.cache[ck] = words
    return words


def compile_qp2(h, i, m):
    """Compiled word list of the type-2 (dressed) charge-m current.
    All tuples are kept, including those whose scalar vanishes: for
    m > c the total action annihilating everything is an assertion
    checked by the verifier, not a structural emptiness."""
    ck = ("qp2", i, m)
    if ck in h.cache:
        return h.cache[ck]
    words = _tuple_words(h, i, m, with_k=True)
    h.cache[ck] = words
    return words


def apply_qp_mode(h, f, r, v):
    """Extract the z^{-r-m} coefficient of the compiled charge-m
    current applied to v (mode of degree r)."""
    i, m = f.color, f.charge
    target = -r - m
    out = ModuleVector()
    for key, coeff in v.terms.items():
        ck = ("qpmode", f.flavor, i, m, r, key)
        cached = h.cache.get(ck)
        if cached is None:
            single = ModuleVector({key: Scalar.one()})
            acc = ModuleVector()
            if f.flavor == "type1":
                for w in compile_qp1(h, i, m):
                    acc = acc + act_tensor_word(h, single, w.x_slots,
                                                w.scalar, target)
            else:
                for w in compile_qp2(h, i, m):
                    if not w.scalar:
                        continue
                    ktab = act_tensor_word_series(h, single, w.k_slots,
                                                  Scalar.one())
                    for d, u in ktab.items():
                        acc = acc + act_tensor_word(h, u, w.x_slots,
                                                    w.scalar, target - d)
            h.cache[ck] = acc
            cached = acc
        out = out + cached.scale(coeff)
    return out


def apply_monomial(h, mono, v):
    """Apply a QPMonomial to v, rightmost factor first."""
    out = v
    for f in reversed(mono.factors):
        out = apply_qp_mode(h, f, f.degree, out)
        if out.is_zero():
            return out
    return out


# monomial orders ------------------------------------------------------

def _seq_lt(a, b):
    """Compare sequences indexed from particle 1 upward (the display
    order writes them reversed); missing entries count as 0."""
    la = list(a)
    lb = list(b)
    top = max(len(la), len(lb))
    la += [0] * (top - len(la))
    lb += [0] * (top - len(lb))
    for x, y in zip(la, lb):
        if x != y:
            return -1 if x < y else 1
    return 0


def compare_lt(a, b, n):
    """Strict linear order on monomials of equal color-type: compare
    color-charge-types lexicographically from color 1, particle 1, then
    degree sequences the same way.  Returns -1, 0 or 1."""
    if a.color_type(n) != b.color_type(n):
        raise ValueError("monomials must share a color-type")
    for i in range(1, n + 1):
        ca = [f.charge for f in a.color_factors(i)]
        cb = [f.charge for f in b.color_factors(i)]
        r = _seq_lt(ca, cb)
        if r:
            return r
    for i in range(1, n + 1):
        da = [f.degree for f in a.color_factors(i)]
        db = [f.degree for f in b.color_factors(i)]
        r = _seq_lt(da, db)
        if r:
            return r
    return 0


def compare_prec(a, b, n):
    """Partial order: a prec b iff a < b and the color-degree-type of a
    is dominated by that of b in the partial-sum sense (all partial
    sums from color 1 are <=, at least one strict)."""
    if compare_lt(a, b, n) >= 0:
        return False
    da = a.color_degree_type(n)
    db = b.color_degree_type(n)
    sa = sb = 0
    any_strict = False
    for i in range(n):
        sa += da[i]
        sb += db[i]
        if sa > sb:
            return False
        if sa < sb:
            any_strict = True
    return any_strict

"""Level-c Heisenberg Fock space.

Basis monomials are multisets of creation generators a_i(-r) applied to
the vacuum.  Annihilation generators a_i(r) act as derivations through
the commutator [a_i(r), a_j(-s)] = delta_{rs} [a_ij r][cr]/r, and
exponentials of generator series are applied term by term with a caller
supplied truncation window.
"""

from fractions import Fraction

from .qarith import Scalar, q_int


class FockMonomial:
    """Multiset of (color, r) pairs, each a factor a_color(-r)."""

    __slots__ = ("parts", "_hash")

    def __init__(self, parts):
        self.parts = tuple(sorted(parts))
        self._hash = None

    @staticmethod
    def vacuum():
        return FockMonomial(())

    @property
    def depth(self):
        return sum(r for _, r in self.parts)

    def add(self, i, r):
        return FockMonomial(self.parts + ((i, r),))

    def __eq__(self, other):
        return isinstance(other, FockMonomial) and self.parts == other.parts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.parts)
        return self._hash

    def __repr__(self):
        return "FockMonomial(%r)" % (self.parts,)


class FockVector:
    """Sparse linear combination of FockMonomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = c

    @staticmethod
    def vacuum_vector():
        return FockVector({FockMonomial.vacuum(): Scalar.one()})

    def is_zero(self):
        return not self.terms

    def add_term(self, m, c):
        cur = self.terms.get(m)
        new = cur + c if cur is not None else c
        if new:
            self.terms[m] = new
        elif cur is not None:
            del self.terms[m]

    def __add__(self, other):
        out = FockVector(dict(self.terms))
        for m, c in other.terms.items():
            out.add_term(m, c)
        return out

    def scale(self, s):
        if not s:
            return FockVector()
        return FockVector({m: c * s for m, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, FockVector) and self.terms == other.terms

    def __repr__(self):
        return "FockVector(%r)" % (self.terms,)

    def to_json(self):
        from .qarith import format_scalar
        return [{"parts": list(map(list, m.parts)), "coeff": format_scalar(c)}
                for m, c in sorted(self.terms.items(),
                                   key=lambda t: t[0].parts)]


def heisenberg_value(rd, c, i, j, r):
    """[a_i(r), a_j(-r)] = [a_ij r][cr]/r on a level-c module."""
    return (q_int(rd.a(i, j) * r) * q_int(c * r)
            * Scalar.from_fraction(Fraction(1, r)))


def create(i, r, v):
    if r < 1:
        raise ValueError("creation index must be positive")
    out = FockVector()
    for m, coeff in v.terms.items():
        out.add_term(m.add(i, r), coeff)
    return out


def annihilate(i, r, rd, c, v):
    """Derivation action of a_i(r), r > 0, at level c."""
    if r < 1:
        raise ValueError("annihilation index must be positive")
    out = FockVector()
    for m, coeff in v.terms.items():
        seen = set()
        for pos, (j, s) in enumerate(m.parts):
            if s != r or (j, s) in seen:
                continue
            seen.add((j, s))
            mult = m.parts.count((j, s))
            rest = list(m.parts)
            rest.remove((j, s))
            val = heisenberg_value(rd, c, i, j, r) \
                * Scalar.from_fraction(mult)
            out.add_term(FockMonomial(rest), coeff * val)
    return out


# exponential application ---------------------------------------------
#
# A generator-series exponent is a map r -> list of (color, Scalar
# coefficient) describing sum_r sum_t coeff a_t(-+r) z^{+-r}.  The two
# engines below expand exp(...) on a vector and tabulate the resulting
# z-exponent contributions d = sum r * multiplicity >= 0.

def apply_annihilation_exp(rd, c, coeff_at, v, colors):
    """Expand exp(sum_{r>=1} sum_t coeff_at(r, t) a_t(r) z^{-r}) on v.

    Returns a dict d >= 0 -> FockVector where the z-contribution of the
    bucket is z^{-d}.  Terminates because annihilation lowers depth.
    """
    out = {0: v}
    maxdepth = max((m.depth for m in v.terms), default=0)
    for r in range(1, maxdepth + 1):
        ops = [(t, coeff_at(r, t)) for t in colors]
        ops = [(t, s) for t, s in ops if s]
        if not ops:
            continue
        cur = dict(out)
        # single application of A_r = sum_t coeff a_t(r)
        def apply_A(w):
            acc = FockVector()
            for t, s in ops:
                acc = acc + annihilate(t, r, rd, c, w).scale(s)
            return acc
        for d, w in list(cur.items()):
            appl = w
            k = 1
            fact = 1
            while True:
                appl = apply_A(appl)
                if appl.is_zero():
                    break
                fact *= k
                bucket = d + r * k
                piece = appl.scale(Scalar.from_fraction(Fraction(1, fact)))
                cur[bucket] = cur.get(bucket, FockVector()) + piece
                k += 1
        out = cur
    return {d: w for d, w in out.items() if not w.is_zero()}


def apply_creation_exp(coeff_at, v, colors, max_total):
    """Expand exp(sum_{r>=1} sum_t coeff_at(r, t) a_t(-r) z^{r}) on v,
    keeping buckets with total exponent d <= max_total.

    Returns dict d >= 0 -> FockVector with z-contribution z^{+d}.
    """
    out = {0: v}
    for r in range(1, max_total + 1):
        ops = [(t, coeff_at(r, t)) for t in colors]
        ops = [(t, s) for t, s in ops if s]
        if not ops:
            continue
        cur = dict(out)
        def apply_A(w):
            acc = FockVector()
            for t, s in ops:
                acc = acc + create(t, r, w).scale(s)
            return acc
        for d, w in list(cur.items()):
            appl = w
            k = 1
            fact = 1
            while d + r * k <= max_total:
                appl = apply_A(appl)
                fact *= k
                bucket = d + r * k
                piece = appl.scale(Scalar.from_fraction(Fraction(1, fact)))
                cur[bucket] = cur.get(bucket, FockVector()) + piece
                k += 1
        out = cur
    return {d: w for d, w in out.items() if not w.is_zero()}


# named operator families ----------------------------------------------
#
# E_-^{+-}(a_i, z) = exp(-+ sum_{r>=1} q^{-+cr/2}/[cr] a_i(-r) z^r)
# E_+^{+-}(a_i, z) = exp(+- sum_{r>=1} q^{-+cr/2}/[cr] a_i(r) z^{-r})
# k-exponential:     exp((q - q^{-1}) sum_{r>=1}
#                        (-q^{2r + cr/2}/(1 + q^{2r})) a_i(r) z^{-r})

_coeff_cache = {}


def series_coeff(kind, c, r):
    """Per-mode coefficient of the named exponential at level c."""
    key = (kind, c, r)
    if key in _coeff_cache:
        return _coeff_cache[key]
    if kind == "E-+":
        out = -(Scalar.q_power(Fraction(-c * r, 2)) / q_int(c * r))
    elif kind == "E--":
        out = Scalar.q_power(Fraction(c * r, 2)) / q_int(c * r)
    elif kind == "E++":
        out = Scalar.q_power(Fraction(-c * r, 2)) / q_int(c * r)
    elif kind == "E+-":
        out = -(Scalar.q_power(Fraction(c * r, 2)) / q_int(c * r))
    elif kind == "k+":
        qq = Scalar.q_power(1) - Scalar.q_power(-1)
        out = qq * (-(Scalar.q_power(Fraction(4 * r + c * r, 2))
                      / (Scalar.one() + Scalar.q_power(2 * r))))
    else:
        raise ValueError("unknown series kind %r" % kind)
    _coeff_cache[key] = out
    return out


class ExpSpec:
    """Names one exponential operator: kind in {"E-+", "E--", "E++",
    "E+-", "k+"}, acting in color `color` at level `c`, with argument
    beta * z where beta is a power of v (beta_v integer exponent)."""

    def __init__(self, kind, color, c, beta_v=0, coeff_scale=None):
        self.kind = kind
        self.color = color
        self.c = c
        self.beta_v = beta_v
        self.coeff_scale = coeff_scale

    def coeff(self, r):
        base = series_coeff(self.kind, self.c, r)
        # argument (beta z)^{+-r}: creation kinds use z^{+r}
        sgn = 1 if self.kind in ("E-+", "E--") else -1
        base = base * Scalar.v_power(sgn * self.beta_v * r)
        if self.coeff_scale is not None:
            base = base * self.coeff_scale
        return base


def apply_exp_series(rd, spec, z_window, v):
    """Apply the named exponential to v, returning a map z-exponent ->
    FockVector restricted to the window [lo, hi]."""
    lo, hi = z_window
    if lo > hi:
        raise ValueError("empty window")
    creation = spec.kind in ("E-+", "E--")
    if creation:
        def cf(r, t):
            return spec.coeff(r) if t == spec.color else Scalar.zero()
        table = apply_creation_exp(cf, v, [spec.color], max(hi, 0))
        out = {d: w for d, w in table.items() if lo <= d <= hi}
    else:
        def cf(r, t):
            return spec.coeff(r) if t == spec.color else Scalar.zero()
        table = apply_annihilation_exp(rd, spec.c, cf, v, [spec.color])
        out = {-d: w for d, w in table.items() if lo <= -d <= hi}
    return out

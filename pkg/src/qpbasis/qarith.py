"""Exact scalar arithmetic for the engine.

Everything downstream works over the field of rational functions in a
single variable v with rational coefficients, where q means v^2.  Working
in v keeps half-integer powers of q polynomial.  A Scalar is a reduced
fraction of two Laurent polynomials; equality is structural.
"""

from fractions import Fraction
import re


class LaurentPoly:
    """Laurent polynomial in v over the rationals.

    Stored densely: `off` is the exponent of coeffs[0].  The zero
    polynomial has empty coeffs and off 0.  First and last stored
    coefficients are nonzero.
    """

    __slots__ = ("off", "coeffs", "_hash")

    def __init__(self, off, coeffs):
        # trim leading/trailing zeros
        lo = 0
        hi = len(coeffs)
        while lo < hi and not coeffs[lo]:
            lo += 1
        while hi > lo and not coeffs[hi - 1]:
            hi -= 1
        if lo == hi:
            self.off = 0
            self.coeffs = ()
        else:
            self.off = off + lo
            self.coeffs = tuple(
                c if type(c) is Fraction else Fraction(c)
                for c in coeffs[lo:hi])
        self._hash = None

    @staticmethod
    def zero():
        return LaurentPoly(0, ())

    @staticmethod
    def const(c):
        return LaurentPoly(0, (Fraction(c),))

    @staticmethod
    def v_power(k, c=1):
        return LaurentPoly(k, (Fraction(c),))

    @staticmethod
    def from_dict(d):
        if not d:
            return LaurentPoly.zero()
        lo = min(d)
        hi = max(d)
        coeffs = [Fraction(0)] * (hi - lo + 1)
        for e, c in d.items():
            coeffs[e - lo] = Fraction(c)
        return LaurentPoly(lo, coeffs)

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def val(self):
        """Lowest exponent (valuation).  Undefined for zero."""
        return self.off

    @property
    def deg(self):
        """Highest exponent.  Undefined for zero."""
        return self.off + len(self.coeffs) - 1

    def leading(self):
        return self.coeffs[-1]

    def shift(self, k):
        if not self.coeffs:
            return self
        return LaurentPoly(self.off + k, self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly) and self.off == other.off
                and self.coeffs == other.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.off, self.coeffs))
        return self._hash

    def __add__(self, other):
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.off, other.off)
        hi = max(self.deg, other.deg)
        coeffs = [Fraction(0)] * (hi - lo + 1)
        for e, c in zip(range(self.off, self.deg + 1), self.coeffs):
            coeffs[e - lo] += c
        for e, c in zip(range(other.off, other.deg + 1), other.coeffs):
            coeffs[e - lo] += c
        return LaurentPoly(lo, coeffs)

    def __neg__(self):
        return LaurentPoly(self.off, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return LaurentPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return LaurentPoly(self.off + other.off, out)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return LaurentPoly.zero()
        return LaurentPoly(self.off, tuple(a * c for a in self.coeffs))

    def eval(self, v0):
        v0 = Fraction(v0)
        acc = Fraction(0)
        p = v0 ** self.off
        for c in self.coeffs:
            acc += c * p
            p *= v0
        return acc

    def monic(self):
        if not self.coeffs:
            return self
        return self.scale(1 / self.leading())

    def __repr__(self):
        return "LaurentPoly(%r, %r)" % (self.off, self.coeffs)


def _poly_divmod(a, b):
    """Division with remainder of ordinary polynomials (val >= 0)."""
    assert b.coeffs
    ra = list(a.coeffs)
    roff = a.off
    # work with explicit exponent arrays starting at 0
    da = [Fraction(0)] * (a.deg + 1 if a.coeffs else 0)
    for e, c in zip(range(a.off, a.deg + 1), ra):
        da[e] = c
    db = [Fraction(0)] * (b.deg + 1)
    for e, c in zip(range(b.off, b.deg + 1), b.coeffs):
        db[e] = c
    degb = b.deg
    lead = db[degb]
    quot = [Fraction(0)] * (max(len(da) - degb, 0))
    for i in range(len(da) - 1, degb - 1, -1):
        if da[i]:
            f = da[i] / lead
            quot[i - degb] = f
            for j in range(degb + 1):
                da[i - degb + j] -= f * db[j]
    return LaurentPoly(0, quot), LaurentPoly(0, da)


_GCD_PRIME = 2147483647


def _poly_mod(a, p):
    """Dense coefficient list of a over GF(p); None when a coefficient
    denominator vanishes mod p."""
    out = [0] * (a.deg + 1)
    for e, c in zip(range(a.off, a.deg + 1), a.coeffs):
        den = c.denominator % p
        if den == 0:
            return None
        num = c.numerator % p
        out[e] = num if den == 1 else num * pow(den, p - 2, p) % p
    return out


def _mod_coprime(a, b, p=_GCD_PRIME):
    """True when the gcd of a and b is certainly constant, decided by
    a Euclid run over GF(p); False means 'unknown'."""
    ma = _poly_mod(a, p)
    mb = _poly_mod(b, p)
    if ma is None or mb is None or not ma[-1] or not mb[-1]:
        return False
    while mb:
        inv = pow(mb[-1], p - 2, p)
        while len(ma) >= len(mb):
            f = ma[-1] * inv % p
            off = len(ma) - len(mb)
            for i, bc in enumerate(mb):
                ma[off + i] = (ma[off + i] - f * bc) % p
            while ma and not ma[-1]:
                ma.pop()
            if not ma:
                break
        ma, mb = mb, ma
    return len(ma) == 1


_gcd_cache = {}


def poly_gcd(a, b):
    """Monic gcd of two polynomials with valuation 0 (or zero)."""
    if a.coeffs and b.coeffs and a.deg > 0 and b.deg > 0:
        key = (a, b)
        hit = _gcd_cache.get(key)
        if hit is not None:
            return hit
        if _mod_coprime(a, b):
            out = LaurentPoly.const(1)
        else:
            x, y = a, b
            while y.coeffs:
                _, r = _poly_divmod(x, y)
                x, y = y, r
            out = x.monic()
        if len(_gcd_cache) > 200000:
            _gcd_cache.clear()
        _gcd_cache[key] = out
        return out
    while b.coeffs:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return a.monic() if a.coeffs else a


def _cross_cancel(num, den):
    """Divide out the common polynomial factor of a numerator and an
    unrelated denominator; den must have valuation 0."""
    if den.deg == 0:
        return num, den
    nval = num.val
    npoly = num.shift(-nval)
    g = poly_gcd(npoly, den)
    if g.coeffs and g.deg > 0:
        npoly = poly_exact_div(npoly, g)
        den = poly_exact_div(den, g)
    return npoly.shift(nval), den


def poly_exact_div(a, b):
    """Exact quotient a/b of polynomials; raises if not exact."""
    q, r = _poly_divmod(a, b)
    if r.coeffs:
        raise ArithmeticError("non-exact polynomial division")
    return q


class Scalar:
    """Reduced rational function num/den in v.

    Canonical form: den is an ordinary polynomial with nonzero constant
    term and leading coefficient 1, gcd(num, den) = 1, and zero is 0/1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = LaurentPoly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = self._reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _reduce(num, den):
        if num.is_zero():
            return num, LaurentPoly.const(1)
        # pull the denominator's valuation into the numerator
        dval = den.val
        if dval:
            den = den.shift(-dval)
            num = num.shift(-dval)
        if den.deg == 0:
            # constant denominator: no gcd needed
            c = den.coeffs[0]
            if c != 1:
                num = num.scale(1 / c)
            return num, LaurentPoly.const(1)
        nval = num.val
        npoly = num.shift(-nval)
        g = poly_gcd(npoly, den)
        if g.coeffs and (g.deg > 0):
            npoly = poly_exact_div(npoly, g)
            den = poly_exact_div(den, g)
        lead = den.leading()
        if lead != 1:
            den = den.scale(1 / lead)
            npoly = npoly.scale(1 / lead)
        return npoly.shift(nval), den

    # constructors -----------------------------------------------------
    @staticmethod
    def zero():
        return _ZERO

    @staticmethod
    def one():
        return _ONE

    @staticmethod
    def from_fraction(c):
        c = Fraction(c)
        if not c:
            return _ZERO
        return Scalar(LaurentPoly.const(c), None, _reduced=True)

    @staticmethod
    def from_int(k):
        return Scalar.from_fraction(k)

    @staticmethod
    def v_power(k, c=1):
        """c * v^k with k an integer (or even Fraction with denominator 1)."""
        k = int(k)
        if not c:
            return _ZERO
        return Scalar(LaurentPoly.v_power(k, c), None, _reduced=True)

    @staticmethod
    def q_power(k, c=1):
        """c * q^k; k may be a half-integer times 1 (i.e. Fraction with
        denominator dividing 2), since q = v^2."""
        e = Fraction(k) * 2
        if e.denominator != 1:
            raise ValueError("q-exponent must be a half integer")
        return Scalar.v_power(int(e), c)

    # predicates -------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_one(self):
        return self == _ONE

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.deg > 0:
            d1 = poly_exact_div(self.den, g)
            d2 = poly_exact_div(other.den, g)
            return Scalar(self.num * d2 + other.num * d1,
                          d1 * d2 * g)
        return Scalar(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    def __neg__(self):
        if self.num.is_zero():
            return self
        return Scalar(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.num.is_zero() or other.num.is_zero():
            return _ZERO
        n1, d1 = self.num, self.den
        n2, d2 = other.num, other.den
        # inputs are reduced, so only cross pairs can cancel; keeping
        # the gcds small avoids quadratic blow-up in long products
        n1, d2 = _cross_cancel(n1, d2)
        n2, d1 = _cross_cancel(n2, d1)
        # all four pairs are now coprime and the denominators stay
        # monic with valuation zero, so the product is reduced
        return Scalar(n1 * n2, d1 * d2, _reduced=True)

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverting zero scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k):
        k = int(k)
        if k == 0:
            return _ONE
        base = self if k > 0 else self.inverse()
        out = _ONE
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other):
        return (isinstance(other, Scalar) and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return "Scalar(%s)" % format_scalar(self)


_ZERO = Scalar(LaurentPoly.zero(), None, _reduced=True)
_ONE = Scalar(LaurentPoly.const(1), None, _reduced=True)


# q-combinatorics ------------------------------------------------------

def q_int(m):
    """[m] = (q^m - q^-m)/(q - q^-1), a Laurent polynomial in q."""
    m = int(m)
    if m == 0:
        return Scalar.zero()
    s = 1 if m > 0 else -1
    m = abs(m)
    # q^{m-1} + q^{m-3} + ... + q^{1-m}; exponents in v are doubled
    d = {2 * e: Fraction(s) for e in range(m - 1, -m, -2)}
    return Scalar(LaurentPoly.from_dict(d))


def q_factorial(k):
    k = int(k)
    if k < 0:
        raise ValueError("q_factorial needs k >= 0")
    out = Scalar.one()
    for t in range(1, k + 1):
        out = out * q_int(t)
    return out


def q_binomial(m, k):
    m = int(m)
    k = int(k)
    if not (0 <= k <= m):
        raise ValueError("q_binomial needs 0 <= k <= m")
    num = q_factorial(m)
    den = q_factorial(k) * q_factorial(m - k)
    out = num / den
    if out.den.deg != 0:
        raise ArithmeticError("q_binomial division was not exact")
    return out


def eval_at(s, v0):
    """Exact rational value of s at v = v0; raises on a pole."""
    v0 = Fraction(v0)
    if v0 == 0:
        raise ZeroDivisionError("v0 must be nonzero for Laurent scalars")
    d = s.den.eval(v0)
    if d == 0:
        raise ZeroDivisionError("pole at v0")
    return s.num.eval(v0) / d


# text form ------------------------------------------------------------

def _format_poly(p):
    if p.is_zero():
        return "0"
    items = []
    for e_v, c in zip(range(p.off, p.deg + 1), p.coeffs):
        if not c:
            continue
        e = Fraction(e_v, 2)  # exponent of q
        items.append((e, c))
    items.sort(key=lambda t: -t[0])
    parts = []
    for e, c in items:
        if e == 0:
            body = str(c)
        else:
            if e.denominator == 1:
                pw = "q^%d" % e.numerator if e != 1 else "q"
            else:
                pw = "q^(%s)" % e
            if c == 1:
                body = pw
            elif c == -1:
                body = "-" + pw
            else:
                body = "%s*%s" % (c, pw)
        parts.append(body)
    out = parts[0]
    for body in parts[1:]:
        if body.startswith("-"):
            out += " - " + body[1:]
        else:
            out += " + " + body
    return out


def format_scalar(s):
    if s.den.deg == 0:
        return _format_poly(s.num)
    return "(%s)/(%s)" % (_format_poly(s.num), _format_poly(s.den))


_TERM_RE = re.compile(
    r"""\s*([+-]?)\s*
        (?:(\d+(?:/\d+)?)\s*\*?\s*)?      # optional coefficient
        (?:q(?:\^\(?(-?\d+(?:/\d+)?)\)?)?)?   # optional q power
        \s*""", re.X)


def _parse_poly(text):
    text = text.strip()
    if text == "0":
        return LaurentPoly.zero()
    d = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError("cannot parse scalar text at %r" % text[pos:])
        sign_s, coeff_s, pow_s = m.groups()
        had_q = "q" in text[pos:m.end()]
        if coeff_s is None and not had_q:
            raise ValueError("empty term in %r" % text)
        if not first and sign_s == "":
            raise ValueError("missing +/- between terms in %r" % text)
        sign = -1 if sign_s == "-" else 1
        coeff = Fraction(coeff_s) if coeff_s else Fraction(1)
        if had_q:
            e = Fraction(pow_s) if pow_s is not None else Fraction(1)
        else:
            e = Fraction(0)
        e_v = e * 2
        if e_v.denominator != 1:
            raise ValueError("q exponent must be a half integer")
        e_v = int(e_v)
        d[e_v] = d.get(e_v, Fraction(0)) + sign * coeff
        pos = m.end()
        first = False
    return LaurentPoly.from_dict(d)


def parse_scalar(text):
    text = text.strip()
    m = re.match(r"^\((.*)\)/\((.*)\)$", text)
    if m:
        return Scalar(_parse_poly(m.group(1)), _parse_poly(m.group(2)))
    return Scalar(_parse_poly(text))


# truncated one-variable series ---------------------------------------

class RatioSeries:
    """Taylor series in one ratio variable, truncated at a fixed order.

    coefficients maps exponent (0 <= e <= truncation_order) to Scalar.
    Arithmetic never reads beyond the truncation order.
    """

    __slots__ = ("coefficients", "truncation_order")

    def __init__(self, coefficients, truncation_order):
        self.truncation_order = int(truncation_order)
        self.coefficients = {
            e: c for e, c in coefficients.items()
            if 0 <= e <= self.truncation_order and c
        }

    @staticmethod
    def one(order):
        return RatioSeries({0: Scalar.one()}, order)

    def coeff(self, e):
        return self.coefficients.get(e, Scalar.zero())

    def __add__(self, other):
        order = min(self.truncation_order, other.truncation_order)
        d = dict(self.coefficients)
        for e, c in other.coefficients.items():
            d[e] = d.get(e, Scalar.zero()) + c
        return RatioSeries(d, order)

    def __mul__(self, other):
        order = min(self.truncation_order, other.truncation_order)
        d = {}
        for e1, c1 in self.coefficients.items():
            for e2, c2 in other.coefficients.items():
                e = e1 + e2
                if e <= order:
                    d[e] = d.get(e, Scalar.zero()) + c1 * c2
        return RatioSeries(d, order)

    def scale(self, s):
        return RatioSeries({e: c * s for e, c in self.coefficients.items()},
                           self.truncation_order)

    def __eq__(self, other):
        order = min(self.truncation_order, other.truncation_order)
        for e in range(order + 1):
            if self.coeff(e) != other.coeff(e):
                return False
        return True

    def __repr__(self):
        items = ", ".join("%d: %s" % (e, format_scalar(c))
                          for e, c in sorted(self.coefficients.items()))
        return "RatioSeries({%s}; order %d)" % (items, self.truncation_order)

    @staticmethod
    def exponential(term_coeff, order):
        """exp(sum_{r>=1} term_coeff(r) x^r) truncated at `order`.

        term_coeff is a callable r -> Scalar.
        """
        log_terms = {r: term_coeff(r) for r in range(1, order + 1)}
        out = {0: Scalar.one()}
        # multiply exp of each single term, truncating as we go
        for r, c in log_terms.items():
            if not c:
                continue
            # exp(c x^r) = sum_k c^k x^{rk} / k!
            piece = {}
            k = 0
            ck = Scalar.one()
            fact = 1
            while r * k <= order:
                piece[r * k] = ck * Scalar.from_fraction(Fraction(1, fact))
                k += 1
                ck = ck * c
                fact *= k
            new = {}
            for e1, c1 in out.items():
                for e2, c2 in piece.items():
                    e = e1 + e2
                    if e <= order:
                        new[e] = new.get(e, Scalar.zero()) + c1 * c2
            out = new
        return RatioSeries(out, order)

    @staticmethod
    def geometric(a, order):
        """1/(1 - a x) truncated at `order`, a a Scalar."""
        d = {}
        c = Scalar.one()
        for e in range(order + 1):
            d[e] = c
            c = c * a
        return RatioSeries(d, order)

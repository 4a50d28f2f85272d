"""Twisted group algebra of the type-A weight lattice.

Group elements are words in the generators e^{alpha_2}, ..., e^{alpha_n},
e^{lambda_n}, subject to e^{alpha_i}e^{alpha_j} =
(-1)^{(alpha_i,alpha_j)} e^{alpha_j}e^{alpha_i} and
e^{alpha_i}e^{lambda_n} = (-1)^{delta_{in}} e^{lambda_n}e^{alpha_i}.
A normal form fixes the generator order alpha_2 < ... < alpha_n <
lambda_n; every word equals a sign times a normal-form word, and the
sign is computed by bubble reordering.
"""

from fractions import Fraction


class RootData:
    """Cartan data of type A_n with the standard symmetric form."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("rank must be >= 1")
        self.n = n
        self.cartan = tuple(
            tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0)
                  for j in range(1, n + 1))
            for i in range(1, n + 1))

    def a(self, i, j):
        """(alpha_i, alpha_j) for 1-based colors."""
        return self.cartan[i - 1][j - 1]

    def pairing_alpha_lambda(self, i, j):
        """(alpha_i, lambda_j); lambda_0 is the zero weight."""
        if j == 0:
            return 0
        return 1 if i == j else 0

    def pairing_lambda_lambda(self, i, j):
        """(lambda_i, lambda_j) as an exact Fraction."""
        if i == 0 or j == 0:
            return Fraction(0)
        lo, hi = min(i, j), max(i, j)
        return Fraction(lo) - Fraction(lo * hi, self.n + 1)


class LatticeElt:
    """Normal-form word e^{m_2 alpha_2} ... e^{m_n alpha_n}
    e^{m_{n+1} lambda_n}, stored as the exponent tuple
    (m_2, ..., m_n, m_{n+1}) of length n."""

    __slots__ = ("exps",)

    def __init__(self, exps):
        self.exps = tuple(int(m) for m in exps)

    @staticmethod
    def identity(n):
        return LatticeElt((0,) * n)

    def __eq__(self, other):
        return isinstance(other, LatticeElt) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __repr__(self):
        return "LatticeElt(%r)" % (self.exps,)

    def to_json(self, sign=1):
        return {"sign": sign, "exps": list(self.exps)}


class SignedLatticeElt:
    __slots__ = ("sign", "elt")

    def __init__(self, sign, elt):
        if sign not in (1, -1):
            raise ValueError("sign must be +-1")
        self.sign = sign
        self.elt = elt

    def __eq__(self, other):
        return (isinstance(other, SignedLatticeElt)
                and self.sign == other.sign and self.elt == other.elt)

    def __hash__(self):
        return hash((self.sign, self.elt))

    def __repr__(self):
        return "SignedLatticeElt(%+d, %r)" % (self.sign, self.elt.exps)


def _cross_parity(n, left_exps, right_exps):
    """Parity of moving the right word's generators left through the
    left word's generators into merged normal form.

    Only adjacent-alpha pairs and the (alpha_n, lambda_n) pair
    anticommute, so the parity is
    sum_{j=2}^{n-1} m'_j m_{j+1}  +  m'_n m_{lambda}.
    Exponent index: position t in the tuple holds m_{t+2} for t < n-1
    and m_lambda at t = n-1.
    """
    total = 0
    # alpha_j of the right word passing alpha_{j+1} of the left word
    for t in range(n - 2):
        total += right_exps[t] * left_exps[t + 1]
    # alpha_n of the right word passing lambda_n of the left word
    if n >= 2:
        total += right_exps[n - 2] * left_exps[n - 1]
    return total % 2


def mul(a, b, n=None):
    """Product of two SignedLatticeElts in the rank-n algebra."""
    if n is None:
        n = len(a.elt.exps)
    par = _cross_parity(n, a.elt.exps, b.elt.exps)
    sign = a.sign * b.sign * (-1 if par else 1)
    exps = tuple(x + y for x, y in zip(a.elt.exps, b.elt.exps))
    return SignedLatticeElt(sign, LatticeElt(exps))


def inverse(a, n=None):
    if n is None:
        n = len(a.elt.exps)
    neg = tuple(-m for m in a.elt.exps)
    par = _cross_parity(n, a.elt.exps, neg)
    sign = a.sign * (-1 if par else 1)
    return SignedLatticeElt(sign, LatticeElt(neg))


def power(a, k, n=None):
    if n is None:
        n = len(a.elt.exps)
    if k < 0:
        return power(inverse(a, n), -k, n)
    out = SignedLatticeElt(1, LatticeElt.identity(n))
    for _ in range(k):
        out = mul(out, a, n)
    return out


def embed_generator(n, kind, index):
    """Normal-form word for a named generator of the twisted algebra.

    kind "alpha" with 1 <= index <= n, or kind "lambda" with
    0 <= index <= n.  e^{alpha_1} and e^{lambda_i} for i < n are the
    defining words in the generators; their defining products carry
    sign +1 by definition except where a word is assembled from other
    defining words (e^{lambda_0} uses e^{-alpha_1}).
    """
    if kind == "alpha":
        if not (1 <= index <= n):
            raise ValueError("alpha index out of range")
        if index >= 2:
            exps = [0] * n
            exps[index - 2] = 1
            return SignedLatticeElt(1, LatticeElt(exps))
        # e^{alpha_1} := e^{-2 alpha_2} e^{-3 alpha_3} ... e^{-n alpha_n}
        # e^{(n+1) lambda_n}, a normal-form word, sign +1.
        exps = [-(k) for k in range(2, n + 1)] + [n + 1]
        return SignedLatticeElt(1, LatticeElt(exps))
    if kind == "lambda":
        if not (0 <= index <= n):
            raise ValueError("lambda index out of range")
        if index == n:
            exps = [0] * n
            exps[n - 1] = 1
            return SignedLatticeElt(1, LatticeElt(exps))
        # e^{lambda_i} := e^{-alpha_{i+1}} e^{-2 alpha_{i+2}} ...
        # e^{-(n-i) alpha_n} e^{(n+1-i) lambda_n}, the unique word with
        # weight exactly lambda_i
        out = SignedLatticeElt(1, LatticeElt.identity(n))
        for t, j in enumerate(range(index + 1, n + 1), start=1):
            out = mul(out, power(embed_generator(n, "alpha", j), -t, n), n)
        lam_n = embed_generator(n, "lambda", n)
        out = mul(out, power(lam_n, n + 1 - index, n), n)
        return out
    raise ValueError("unknown generator kind %r" % kind)


# weights and pairings -------------------------------------------------

def weight_of_exps(rd, exps):
    """Weight of a lattice word in (root-coefficient, lambda_n) form:
    returns (alpha coefficient tuple of length n as Fractions).

    The word's weight is sum m_k alpha_k + m_lambda lambda_n; with
    lambda_n = (alpha_1 + 2 alpha_2 + ... + n alpha_n)/(n+1) this is a
    rational combination of simple roots.
    """
    n = rd.n
    mlam = Fraction(exps[n - 1])
    coords = [mlam * Fraction(j, n + 1) for j in range(1, n + 1)]
    for t in range(n - 1):
        coords[t + 1] += exps[t]
    return tuple(coords)


def root_coords_from_exps(rd, exps):
    """Integral simple-root coordinates of a word known to lie in Q."""
    coords = weight_of_exps(rd, exps)
    out = []
    for c in coords:
        if c.denominator != 1:
            raise ValueError("word weight is not in the root lattice")
        out.append(int(c))
    return tuple(out)


def pair_alpha_with(rd, j, beta_root_coords, sector):
    """(alpha_j, beta + lambda_sector) with beta in simple-root
    coordinates; sector 0 means the zero weight."""
    total = sum(bk * rd.a(j, k)
                for k, bk in enumerate(beta_root_coords, start=1))
    return total + rd.pairing_alpha_lambda(j, sector)


def pair_weight_alpha(rd, exps, j):
    """(alpha_j, weight of word) for an arbitrary word in P (integer)."""
    n = rd.n
    total = exps[n - 1] * (1 if j == n else 0)
    for t in range(n - 1):
        total += exps[t] * rd.a(j, t + 2)
    return total


def pair_weight_lambda(rd, exps, i):
    """(lambda_i, weight of word) for a word in P, as a Fraction."""
    n = rd.n
    total = Fraction(exps[n - 1]) * rd.pairing_lambda_lambda(i, n)
    for t in range(n - 1):
        k = t + 2
        total += exps[t] * rd.pairing_alpha_lambda(k, i)
    return total


def pairing(rd, a, b):
    """Symmetric bilinear form of two weights given as dicts mapping
    ("alpha", i) or ("lambda", i) to rational coefficients."""
    total = Fraction(0)
    for (ka, ia), ca in a.items():
        for (kb, ib), cb in b.items():
            if ka == "alpha" and kb == "alpha":
                g = Fraction(rd.a(ia, ib))
            elif ka == "lambda" and kb == "lambda":
                g = rd.pairing_lambda_lambda(ia, ib)
            else:
                i = ia if ka == "alpha" else ib
                j = ib if ka == "alpha" else ia
                g = Fraction(rd.pairing_alpha_lambda(i, j))
            total += Fraction(ca) * Fraction(cb) * g
    return total


def z_exponent(rd, alpha_root_coords, beta_root_coords, sector):
    """(alpha, beta + lambda_sector) for alpha, beta in the root
    lattice given by simple-root coordinates."""
    total = 0
    for j, aj in enumerate(alpha_root_coords, start=1):
        if aj:
            total += aj * pair_alpha_with(rd, j, beta_root_coords, sector)
    return total

"""Enumeration of the predicted quasi-particle bases and graded counts.

A monomial is admissible when every charge is at most the level c, the
per-row degree bound holds, and equal-charge neighbours keep a gap of
twice the charge.  The search runs over color-dual-charge matrices
(column k counts the particles of charge >= k per color), which makes
the tree finite: the maximal total degree of a dual-charge matrix is
the negative of a positive definite quadratic form, so matrices deeper
than the floor are pruned exactly.
"""

import math

from .quasiparticle import QPFactor, QPMonomial


class BasisSpec:
    """Enumeration request: module handle, degree cutoff -N, flavor."""

    __slots__ = ("handle", "floor", "flavor")

    def __init__(self, handle, floor, flavor="type1"):
        if floor < 0:
            raise ValueError("floor must be >= 0")
        if flavor not in ("type1", "type2"):
            raise ValueError("unknown flavor %r" % flavor)
        self.handle = handle
        self.floor = floor
        self.flavor = flavor


class GradedCount:
    """Counts of admissible monomials per (color-type, degree) key;
    zero keys are omitted."""

    __slots__ = ("table",)

    def __init__(self, table):
        self.table = dict(table)

    def get(self, color_type, degree):
        return self.table.get((tuple(color_type), degree), 0)

    def __eq__(self, other):
        return isinstance(other, GradedCount) and self.table == other.table


def _sector_shift(h, i, m):
    """Sum of delta_{i j_s} over the first m tensor slots."""
    return sum(1 for s in range(min(m, h.c)) if h.sectors[s] == i)


def _charges_from_dual(dual):
    """Conjugate a nonincreasing dual-charge column vector into the
    charge list (m_1 >= m_2 >= ... for particles 1, 2, ...)."""
    rows = dual[0] if dual else 0
    return [sum(1 for k in dual if k >= r) for r in range(1, rows + 1)]


def _row_bounds(h, i, charges, prev_charges):
    """Upper bound of the degree of each particle row of color i, from
    the displayed difference condition."""
    bounds = []
    for r, m in enumerate(charges):
        coupling = sum(min(m, mp) for mp in prev_charges)
        larger = sum(1 for mt in charges if mt > m)
        bounds.append(coupling - _sector_shift(h, i, m)
                      - 2 * m * larger - m)
    return bounds


def _chained_max(charges, bounds):
    """Maximal total degree of one color: row bounds sharpened by the
    equal-charge gap condition."""
    total = 0
    prev = None
    for r, (m, b) in enumerate(zip(charges, bounds)):
        ub = b
        if r > 0 and charges[r - 1] == m and prev - 2 * m < ub:
            ub = prev - 2 * m
        total += ub
        prev = ub
    return total


def _dual_matrices(n, c, budget):
    """All matrices (r_i^{(k)})_{i=1..n, k=1..c} with nonincreasing
    columns per color whose quadratic form
    sum (r_i^{(k)})^2 - r_i^{(k)} r_{i-1}^{(k)} stays within budget.
    The form equals minus the maximal total degree before sector
    shifts, so nothing reachable above the floor is lost."""
    cap = math.isqrt(max(0, 2 * n * budget))
    out = []

    def columns(prefix):
        """Nonincreasing tuples of length c with entries <= cap."""
        if len(prefix) == c:
            yield tuple(prefix)
            return
        top = prefix[-1] if prefix else cap
        for v in range(top, -1, -1):
            yield from columns(prefix + [v])

    def rec(i, rows, qform):
        if i > n:
            out.append(tuple(rows))
            return
        prev = rows[-1] if rows else (0,) * c
        for col in columns([]):
            q = qform + sum(v * v - v * p for v, p in zip(col, prev))
            # later colors can lower the form by strictly less than
            # half of the squared current column (chained minimization
            # over a path), so this never prunes a reachable matrix
            slack = sum(v * v for v in col) // 2 if i < n else 0
            if q - slack > budget:
                continue
            rec(i + 1, rows + [col], q)

    rec(1, [], 0)
    return out


def enumerate_basis(spec):
    """All admissible monomials with total degree >= -floor, in the
    canonical order (color-type, color-charge-type, degree sequences,
    compared from particle 1)."""
    h = spec.handle
    n, c, N = h.n, h.c, spec.floor
    results = []
    for mat in _dual_matrices(n, c, N):
        charges = [_charges_from_dual(mat[i]) for i in range(n)]
        bounds = []
        for i in range(1, n + 1):
            prev = charges[i - 2] if i >= 2 else []
            bounds.append(_row_bounds(h, i, charges[i - 1], prev))
        per_color_max = [_chained_max(charges[i], bounds[i])
                         for i in range(n)]
        if sum(per_color_max) < -N:
            continue
        rows = []
        for i in range(n):
            for r in range(len(charges[i])):
                rows.append((i, r))
        suffix = [0] * (len(rows) + 1)
        for idx in range(len(rows) - 1, -1, -1):
            i, r = rows[idx]
            ub = bounds[i][r]
            if r > 0 and charges[i][r - 1] == charges[i][r]:
                ub = min(ub, bounds[i][r - 1] - 2 * charges[i][r])
            suffix[idx] = suffix[idx + 1] + _suffix_row_max(
                charges[i], bounds[i], r)

        degrees = [[None] * len(charges[i]) for i in range(n)]

        def rec(idx, total):
            if idx == len(rows):
                results.append(_build_monomial(spec, charges, degrees))
                return
            i, r = rows[idx]
            ub = bounds[i][r]
            if r > 0 and charges[i][r - 1] == charges[i][r]:
                ub = min(ub, degrees[i][r - 1] - 2 * charges[i][r])
            lb = -N - total - suffix[idx + 1]
            for l in range(ub, lb - 1, -1):
                degrees[i][r] = l
                rec(idx + 1, total + l)
            degrees[i][r] = None

        rec(0, 0)
    results.sort(key=_canonical_key(n))
    return results


def _suffix_row_max(charges, bounds, r):
    """Optimistic maximum for row r of one color, with the gap chain
    anchored at the row bounds rather than at chosen degrees."""
    ub = bounds[r]
    rr = r
    while rr > 0 and charges[rr - 1] == charges[rr]:
        rr -= 1
        ub = min(ub, bounds[rr] - 2 * charges[r] * (r - rr))
    return ub


def _build_monomial(spec, charges, degrees):
    factors = []
    for i in range(len(charges), 0, -1):
        ch = charges[i - 1]
        dg = degrees[i - 1]
        for r in range(len(ch) - 1, -1, -1):
            factors.append(QPFactor(i, ch[r], dg[r], spec.flavor))
    return QPMonomial(factors)


def _canonical_key(n):
    def key(mono):
        charges = tuple(tuple(f.charge for f in mono.color_factors(i))
                        for i in range(1, n + 1))
        degs = tuple(tuple(-f.degree for f in mono.color_factors(i))
                     for i in range(1, n + 1))
        return (mono.color_type(n), charges, degs)
    return key


def validate_monomial(spec, mono):
    """Independent re-check of one monomial against the displayed
    conditions; raises ValueError on the first violation."""
    h = spec.handle
    n, c = h.n, h.c
    for i in range(1, n + 1):
        fs = mono.color_factors(i)
        prev = [f.charge for f in mono.color_factors(i - 1)] if i >= 2 \
            else []
        charges = [f.charge for f in fs]
        for r, f in enumerate(fs):
            if f.charge > c:
                raise ValueError("charge above the level")
            bound = sum(min(f.charge, mp) for mp in prev) \
                - _sector_shift(h, i, f.charge) \
                - 2 * f.charge * sum(1 for mt in charges
                                     if mt > f.charge) - f.charge
            if f.degree > bound:
                raise ValueError("row bound violated")
            if r > 0 and fs[r - 1].charge == f.charge \
                    and f.degree > fs[r - 1].degree - 2 * f.charge:
                raise ValueError("gap condition violated")
    if mono.total_degree() < -spec.floor:
        raise ValueError("below the floor")


def graded_count(spec):
    """Tabulate enumerate_basis by (color-type, total degree)."""
    table = {}
    n = spec.handle.n
    for mono in enumerate_basis(spec):
        key = (mono.color_type(n), mono.total_degree())
        table[key] = table.get(key, 0) + 1
    return GradedCount(table)

"""Fraction-free exact linear algebra over Q and over polynomial rings."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .polynomials import Polynomial, PolyRing, coeffs_in, exact_div
from .rings import normalize_rat


def _row_to_ints(row) -> list:
    den = 1
    for v in row:
        f = Fraction(v)
        den = den * f.denominator // int_gcd(den, f.denominator)
    return [int(Fraction(v) * den) for v in row]


def bareiss_echelon(rows) -> tuple:
    """Fraction-free row echelon form of an integer matrix.

    Returns (echelon_rows, pivot_cols, sign); rows are fresh lists of ints.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], [], 1
    ncols = len(m[0])
    pivots = []
    sign = 1
    prev = 1
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
            sign = -sign
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            head = m[i][c]
            for j in range(c + 1, ncols):
                m[i][j] = (piv * m[i][j] - head * m[r][j]) // prev
            m[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots, sign


def rank(rows) -> int:
    if not rows:
        return 0
    ints = [_row_to_ints(r) for r in rows]
    return len(bareiss_echelon(ints)[0])


def nullspace(rows, ncols: int = None) -> list:
    """Basis of the right nullspace of a rational matrix.

    Vectors are returned as tuples of ints, primitive and with the first
    nonzero entry positive (one vector per free column, deterministic order).
    """
    if not rows:
        if not ncols:
            return []
        basis = []
        for j in range(ncols):
            v = [0] * ncols
            v[j] = 1
            basis.append(tuple(v))
        return basis
    ncols = len(rows[0]) if ncols is None else ncols
    ints = [_row_to_ints(r) for r in rows]
    ech, pivots, _ = bareiss_echelon(ints)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i in range(len(ech) - 1, -1, -1):
            pc = pivots[i]
            s = Fraction(0)
            for j in range(pc + 1, ncols):
                if v[j]:
                    s += Fraction(ech[i][j]) * v[j]
            v[pc] = -s / ech[i][pc]
        den = 1
        for val in v:
            den = den * val.denominator // int_gcd(den, val.denominator)
        ints_v = [int(val * den) for val in v]
        g = 0
        for val in ints_v:
            g = int_gcd(g, abs(val))
        if g > 1:
            ints_v = [val // g for val in ints_v]
        lead = next((val for val in ints_v if val), 1)
        if lead < 0:
            ints_v = [-val for val in ints_v]
        basis.append(tuple(ints_v))
    return basis


def det_qq(rows):
    """Exact determinant of a square rational matrix (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    scale = Fraction(1)
    ints = []
    for r in rows:
        den = 1
        for v in r:
            f = Fraction(v)
            den = den * f.denominator // int_gcd(den, f.denominator)
        scale /= den
        ints.append([int(Fraction(v) * den) for v in r])
    ech, pivots, sign = bareiss_echelon(ints)
    if len(pivots) < n:
        return 0
    return normalize_rat(sign * ech[-1][-1] * scale)


class ExactMatrix:
    """Dense matrix with exact rational entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [[normalize_rat(Fraction(v)) if not isinstance(v, int) else v for v in r] for r in rows]
        if self.rows and any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged matrix")

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def rank(self) -> int:
        return rank(self.rows)

    def nullspace(self) -> list:
        return nullspace(self.rows, self.shape[1])

    def det(self):
        return det_qq(self.rows)


def det_poly(rows, ring: PolyRing) -> Polynomial:
    """Bareiss determinant of a matrix with polynomial entries."""
    n = len(rows)
    if n == 0:
        return ring.one()
    m = [list(r) for r in rows]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        pr = next((i for i in range(k, n) if not m[i][k].is_zero()), None)
        if pr is None:
            return ring.zero()
        if pr != k:
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_div(num, prev)
                if m[i][j] is None:
                    raise ArithmeticError("Bareiss division failed")
            m[i][k] = ring.zero()
        prev = m[k][k]
    out = m[n - 1][n - 1]
    return out if sign == 1 else -out


def sylvester_matrix(f: Polynomial, g: Polynomial, var: str) -> list:
    """Sylvester matrix of f and g with respect to var (polynomial entries)."""
    ring = f.ring
    m = f.degree_in(var)
    n = g.degree_in(var)
    fc = coeffs_in(f, var)
    gc = coeffs_in(g, var)
    size = m + n
    rows = []
    for i in range(n):
        row = [ring.zero()] * size
        for k in range(m + 1):
            row[i + (m - k)] = fc.get(k, ring.zero())
        rows.append(row)
    for i in range(m):
        row = [ring.zero()] * size
        for k in range(n + 1):
            row[i + (n - k)] = gc.get(k, ring.zero())
        rows.append(row)
    return rows


def sylvester_resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Resultant as the Sylvester determinant; used as an independent oracle."""
    m = f.degree_in(var)
    n = g.degree_in(var)
    if m == 0 and n == 0:
        return f.ring.one()
    if n == 0:
        return g**m
    if m == 0:
        return f**n
    return det_poly(sylvester_matrix(f, g, var), f.ring)

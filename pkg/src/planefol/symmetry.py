"""Isotropy computations: the sl3 symmetry kernel and explicit family checks."""

from __future__ import annotations

from fractions import Fraction

from .foliation import CHART_COORDS, Foliation, ProjectiveMap, wedge_lie
from .linalg import nullspace
from .polynomials import PolyRing, Polynomial
from .rings import QQ, normalize_rat

# basis of sl3: E_ij off-diagonal plus two diagonal traceless matrices
SL3_BASIS = [
    ((0, 1, 0), (0, 0, 0), (0, 0, 0)),  # E12
    ((0, 0, 1), (0, 0, 0), (0, 0, 0)),  # E13
    ((0, 0, 0), (1, 0, 0), (0, 0, 0)),  # E21
    ((0, 0, 0), (0, 0, 1), (0, 0, 0)),  # E23
    ((0, 0, 0), (0, 0, 0), (1, 0, 0)),  # E31
    ((0, 0, 0), (0, 0, 0), (0, 1, 0)),  # E32
    ((1, 0, 0), (0, -1, 0), (0, 0, 0)),  # H12
    ((0, 0, 0), (0, 1, 0), (0, 0, -1)),  # H23
]


def matrix_combination(coeffs) -> tuple:
    rows = [[Fraction(0)] * 3 for _ in range(3)]
    for c, E in zip(coeffs, SL3_BASIS):
        if not c:
            continue
        for i in range(3):
            for j in range(3):
                rows[i][j] += Fraction(c) * E[i][j]
    return tuple(tuple(normalize_rat(v) for v in row) for row in rows)


def induced_affine_field(A, chart: str, ring: PolyRing) -> tuple:
    """The vector field of the one-parameter subgroup exp(tA) in an affine chart.

    A is a 3x3 matrix acting as (x y z) A (d/dx; d/dy; d/dz); in the chart
    x_k = 1 with coordinates (u, v) the components are L_u - u L_k, L_v - v L_k
    for the linear forms L_j = sum_i x_i a_ij.
    """
    names = ("x", "y", "z")
    k = names.index(chart)
    u, v = CHART_COORDS[chart]
    iu, iv = names.index(u), names.index(v)
    gens = {u: ring.var(u), v: ring.var(v), chart: ring.one()}

    def L(j):
        acc = ring.zero()
        for i in range(3):
            if A[i][j]:
                acc = acc + gens[names[i]].scale(A[i][j])
        return acc

    Lu, Lv, Lk = L(iu), L(iv), L(k)
    return (Lu - gens[u] * Lk, Lv - gens[v] * Lk)


def symmetry_wedges(F: Foliation, A) -> list:
    """Wedge polynomials L_{tau(A)} omega ^ omega in the charts z=1 and x=1."""
    out = []
    for chart in ("z", "x"):
        w = F.affine_form(chart)
        ring = w.A.ring
        X = induced_affine_field(A, chart, ring)
        _, wedge = wedge_lie(X, w.A, w.B, coords=w.coords)
        out.append(wedge)
    return out


def symmetry_space(F: Foliation) -> dict:
    """Kernel of A |-> L_{tau(A)} omega ^ omega over sl3.

    Returns the isotropy dimension, the orbit dimension 8 - dim, and a basis
    of traceless matrices spanning the kernel.
    """
    wedges_per_basis = [symmetry_wedges(F, E) for E in SL3_BASIS]
    rows = []
    for chart_idx in range(2):
        monomials = set()
        for ws in wedges_per_basis:
            monomials.update(ws[chart_idx].terms)
        for e in sorted(monomials):
            rows.append([Fraction(ws[chart_idx].terms.get(e, 0)) for ws in wedges_per_basis])
    basis = nullspace(rows, ncols=8)
    matrices = [matrix_combination(v) for v in basis]
    return {
        "dim_iso": len(basis),
        "dim_orbit": 8 - len(basis),
        "kernel_coeffs": basis,
        "matrices": matrices,
    }


def is_symmetry(F: Foliation, X: tuple, chart: str = "z") -> dict:
    """Whether the affine polynomial field X is a symmetry; for affine X (deg <= 1)
    also returns the constant lambda with L_X omega = lambda omega."""
    w = F.affine_form(chart)
    (P, Q), wedge = wedge_lie(X, w.A, w.B, coords=w.coords)
    res = {"symmetry": wedge.is_zero(), "lambda": None}
    if not res["symmetry"]:
        return res
    if max(p.total_degree() for p in X) <= 1:
        ref = w.A if not w.A.is_zero() else w.B
        num = P if not w.A.is_zero() else Q
        lam = None
        if num.is_zero():
            lam = Fraction(0)
        else:
            e, c = ref.lead()
            ce = num.terms.get(e)
            if ce is not None:
                lam = Fraction(ce) / Fraction(c)
        if lam is not None and (P - w.A.scale(lam)).is_zero() and (Q - w.B.scale(lam)).is_zero():
            res["lambda"] = normalize_rat(lam)
        else:
            res["lambda"] = None  # proportional factor is not a constant
    return res


def lie_bracket(X: tuple, Y: tuple, coords) -> tuple:
    u, v = coords

    def apply(Z, f):
        return Z[0] * f.derivative(u) + Z[1] * f.derivative(v)

    return (apply(X, Y[0]) - apply(Y, X[0]), apply(X, Y[1]) - apply(Y, X[1]))


def mat_bracket(A, B) -> tuple:
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            ab = sum(Fraction(A[i][k]) * Fraction(B[k][j]) for k in range(3))
            ba = sum(Fraction(B[i][k]) * Fraction(A[k][j]) for k in range(3))
            row.append(normalize_rat(ab - ba))
        rows.append(tuple(row))
    return tuple(rows)


def kernel_is_subalgebra(F: Foliation, space: dict = None) -> bool:
    """Bracket-closure of the computed symmetry kernel."""
    space = space or symmetry_space(F)
    mats = space["matrices"]
    for A in mats:
        for B in mats:
            C = mat_bracket(A, B)
            ws = symmetry_wedges(F, C)
            if not all(w.is_zero() for w in ws):
                return False
    return True


def verify_isotropy_family(F: Foliation, rows) -> bool:
    """Exact check that a parameterized projective family fixes the foliation.

    rows: 3x3 entries that are rationals or polynomials in parameter variables;
    the family fixes F iff phi^* Omega ^ Omega = 0 identically in the parameters.
    """
    param_ring = None
    for r in rows:
        for v in r:
            if isinstance(v, Polynomial):
                param_ring = v.ring
    phi = ProjectiveMap(rows, param_ring)
    a2, b2, c2 = F.pullback_raw(phi)
    ring = a2.ring
    a1 = F.a.map_into(ring)
    b1 = F.b.map_into(ring)
    c1 = F.c.map_into(ring)
    w1 = a2 * b1 - b2 * a1
    w2 = a2 * c1 - c2 * a1
    w3 = b2 * c1 - c2 * b1
    return w1.is_zero() and w2.is_zero() and w3.is_zero()


def model_isotropy_family(kind: str, d: int) -> list:
    """The explicit isotropy family of a model, as a symbolic matrix in (alpha, beta)."""
    ring = PolyRing(QQ, ("alpha", "beta"))
    al, be = ring.var("alpha"), ring.var("beta")
    one = ring.one()
    if kind == "f1":
        return [[al ** (d - 1), ring.zero(), ring.zero()], [ring.zero(), al**d, ring.zero()], [be, ring.zero(), one]]
    if kind == "f2":
        return [[al ** (d + 1), ring.zero(), ring.zero()], [ring.zero(), al**d, ring.zero()], [be, ring.zero(), one]]
    if kind == "f0":
        return [[al**d, ring.zero(), ring.zero()], [ring.zero(), al, ring.zero()], [ring.zero(), ring.zero(), one]]
    if kind == "homogeneous":
        return [[al, ring.zero(), ring.zero()], [ring.zero(), al, ring.zero()], [ring.zero(), ring.zero(), one]]
    raise KeyError(f"unknown family kind {kind!r}")

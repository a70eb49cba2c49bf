import random
from fractions import Fraction

import pytest

from planefol.corpus import f0, f1, f2, g_family, h1, jouanolou
from planefol.foliation import (
    Foliation,
    FoliationError,
    PROJ_RING,
    ProjectiveMap,
    first_integral_check,
    rational_form_closed,
    wedge_lie,
)
from planefol.polynomials import poly_gcd_many

from helpers import random_homogeneous

X, Y, Z = (PROJ_RING.var(v) for v in ("x", "y", "z"))


def rand_map(rng, bound=5):
    while True:
        pm = ProjectiveMap([[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)])
        if pm.det() != 0:
            return pm


def test_from_affine_matches_reference_homogeneous_forms():
    d, lam = 3, Fraction(2)
    F = f0(d, lam)
    a_ref = -lam * Y * Z**d
    b_ref = Z * (X * Z ** (d - 1) + Y**d)
    c_ref = Y * ((lam - 1) * X * Z ** (d - 1) - Y**d)
    # projective class matches the reference homogeneous form (up to sign)
    assert (F.a + a_ref).is_zero() and (F.b + b_ref).is_zero() and (F.c + c_ref).is_zero()

    G = g_family(d, 1)
    assert (G.a - Z * (X**d - Y * Z ** (d - 1))).is_zero()


def test_degree_zero_and_guards():
    F = Foliation.from_affine(PROJ_RING.one(), PROJ_RING.zero(), "z")  # dx
    assert F.degree == 0
    with pytest.raises(FoliationError):
        Foliation.from_affine(X, X, "z")  # common factor x
    with pytest.raises(FoliationError):
        Foliation.from_affine(PROJ_RING.zero(), PROJ_RING.zero(), "z")


def test_euler_and_primitivity_invariants():
    rng = random.Random(11)
    F = f0(3, Fraction(5, 2))
    for _ in range(8):
        F2 = F.pullback(rand_map(rng))
        x, y, z = (F2.ring.var(v) for v in ("x", "y", "z"))
        assert (x * F2.a + y * F2.b + z * F2.c).is_zero()
        assert poly_gcd_many([F2.a, F2.b, F2.c]).is_constant()
        assert F2.degree == F.degree
        for p in F2.form():
            assert p.is_homogeneous() and p.total_degree() == F.degree + 1


def test_abc_components_examples_and_round_trip():
    d = 3
    A, B, C = f2(d).abc_components()
    assert A.is_zero() and B.to_string() == "x^3" and C.to_string() == "y^3"
    F = f0(d, 2)
    A, B, C = F.abc_components()
    assert A.to_string() == "x*z^2 + y^3" and B.to_string() == "2*y*z^2" and C.is_zero()
    # reconstruction identity
    x, y, z = (F.ring.var(v) for v in ("x", "y", "z"))
    assert (B * z - C * y - F.a).is_zero()
    assert (C * x - A * z - F.b).is_zero()
    assert (A * y - B * x - F.c).is_zero()
    # radial pencil: (0, 0, 1) up to sign
    rad = Foliation.from_affine(-Y, X, "z")
    A, B, C = rad.abc_components()
    assert A.is_zero() and B.is_zero() and not C.is_zero() and C.is_constant()


def test_pullback_functoriality_and_identity():
    rng = random.Random(2)
    F = jouanolou(3)
    assert F.pullback(ProjectiveMap.identity()).same_class(F)
    for _ in range(5):
        p1, p2 = rand_map(rng), rand_map(rng)
        assert F.pullback(p1.compose(p2)).same_class(F.pullback(p1).pullback(p2))


def test_pullback_coordinate_swap_symmetry():
    d = 3
    H = h1(d)  # y^d dx - x^d dy
    swap = ProjectiveMap([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert H.pullback(swap).same_class(H)


def test_singular_map_rejected():
    F = f1(2)
    with pytest.raises(Exception):
        F.pullback(ProjectiveMap([[1, 0, 0], [1, 0, 0], [0, 0, 1]]))


def test_wedge_lie_radial_homogeneity():
    # L_R omega = (d+1) omega for homogeneous degree-d coefficients, so the wedge vanishes
    d = 3
    w = h1(d).affine_form("z")
    (P, Q), wedge = wedge_lie((X, Y), w.A, w.B)
    assert wedge.is_zero()
    assert (P - w.A.scale(d + 1)).is_zero() and (Q - w.B.scale(d + 1)).is_zero()


def test_wedge_lie_symmetry_model_and_counterexample():
    d = 3
    # omega = dx + x^d dy with its scaling symmetry gamma = 1/(1-d)
    A = PROJ_RING.one()
    B = X**d
    gamma = Fraction(1, 1 - d)
    _, wedge = wedge_lie((X.scale(gamma), Y), A, B)
    assert wedge.is_zero()
    # X = d/dy against x dy - y dx + y^d dy is not a symmetry
    A2 = -Y
    B2 = X + Y**d
    _, wedge2 = wedge_lie((PROJ_RING.zero(), PROJ_RING.one()), A2, B2)
    assert not wedge2.is_zero()


def test_invariant_curves():
    d = 3
    F2 = f2(d)
    assert F2.is_invariant_curve(X)
    assert not F2.is_invariant_curve(Y)
    lam = Fraction(2)
    F = f0(d, lam)
    curve = (1 - lam * d) * X * Z ** (d - 1) + Y**d
    assert F.is_invariant_curve(curve)


def test_closed_rational_forms_and_first_integrals():
    d = 3
    # omega_1^d / (x^2 y^d) is closed
    w = f1(d).affine_form("z")
    assert rational_form_closed(w.A, X**2 * Y**d, w.B, X**2 * Y**d)
    # H = (1/(d-1)) (x/y)^(d-1) + 1/x is a first integral of the convex model
    num = X**d + (d - 1) * Y ** (d - 1)
    den = (d - 1) * X * Y ** (d - 1)
    assert first_integral_check(num, den, w.A, w.B)
    # dx + dy is closed
    assert rational_form_closed(PROJ_RING.one(), PROJ_RING.one(), PROJ_RING.one(), PROJ_RING.one())
    # and omega_2^d / x^(d+2) is closed
    w2 = f2(d).affine_form("z")
    assert rational_form_closed(w2.A, X ** (d + 2), w2.B, X ** (d + 2))


def test_affine_round_trip_through_charts():
    F = jouanolou(3)
    w = F.affine_form("z")
    G = Foliation.from_affine(w.A, w.B, "z")
    assert G.same_class(F)
    wx = F.affine_form("x")
    G2 = Foliation.from_affine(wx.A, wx.B, "x")
    assert G2.same_class(F)


def test_from_affine_over_parameter_rings():
    # symbolic parameters must not participate in the chart homogenization
    from planefol.foliation import proj_ring

    ring = proj_ring(("lam",))
    x, y, z, lam = (ring.var(v) for v in ring.vars)
    F = Foliation.from_affine(-lam * y, x + y**3, "z")
    a_ref = -lam * y * z**3
    b_ref = z * (x * z**2 + y**3)
    c_ref = y * ((lam - 1) * x * z**2 - y**3)
    assert (F.a + a_ref).is_zero() and (F.b + b_ref).is_zero() and (F.c + c_ref).is_zero()
    assert F.degree == 3

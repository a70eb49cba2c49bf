import random
from fractions import Fraction

import pytest

from planefol.corpus import f0, f1, f2, g_family, h1, h12, jouanolou, radial_perturbation
from planefol.foliation import Foliation, PROJ_RING
from planefol.local import (
    ProjectivePoint,
    bb_equals,
    bb_index,
    classify,
    intersection_multiplicity,
    kappa_and_lambda,
    milnor_is_one,
    milnor_number,
    nu_tau,
    quasi_radial_maximal,
    singular_points,
    tangency_order,
    u1_membership,
)
from planefol.polynomials import PolyRing
from planefol.rings import QQ

from helpers import random_homogeneous

X, Y, Z = (PROJ_RING.var(v) for v in ("x", "y", "z"))
ORIGIN = ProjectivePoint([0, 0, 1])


def test_singular_loci_of_models():
    d = 3
    loc = singular_points(f2(d))
    assert [p.to_strings() for p in loc.points] == [("0", "0", "1")]
    assert loc.complete and loc.milnor_sum == d * d + d + 1

    loc = singular_points(f1(d))
    assert {p.to_strings() for p in loc.points} == {("0", "0", "1"), ("0", "1", "0")}
    assert loc.complete

    loc = singular_points(f0(d, 2))
    assert {p.to_strings() for p in loc.points} == {("0", "0", "1"), ("1", "0", "0")}
    assert loc.complete


def test_every_found_point_satisfies_the_system():
    # substitution checks are already run inside singular_points; exercise a packet case
    loc = singular_points(jouanolou(3))
    assert loc.complete
    assert sum(p.weight for p in loc.points) == 13


def test_milnor_numbers():
    d = 3
    assert milnor_number(f2(d), ORIGIN) == d * d + d + 1
    assert milnor_number(f1(d), ORIGIN) == d * d + d  # the nu = d point (sum rule: 13 - 1)
    # x dy - y dx + P(y) dy has mu > 1 at [1:0:0]
    F = radial_perturbation(d, [1, 0, 2])
    m_inf = ProjectivePoint([1, 0, 0])
    assert milnor_number(F, m_inf) > 1
    assert milnor_number(F, ORIGIN) == 1


def test_bb_indices():
    d = 3
    for lam in (Fraction(2), Fraction(-1, 2), Fraction(7, 5)):
        assert bb_index(f0(d, lam), ORIGIN) == 2 + lam + 1 / lam
    # G family: det Jac = 1 at the origin, BB = 4
    G = g_family(d, Fraction(1))
    assert milnor_is_one(G, ORIGIN)[0][1]
    assert bb_index(G, ORIGIN) == 4


def test_jouanolou_bb_at_all_points_quotient_ring():
    for d in (2, 3):
        F = jouanolou(d)
        val = Fraction((d + 2) ** 2, d * d + d + 1)
        for pt in singular_points(F).points:
            assert bb_equals(F, pt, val)
            assert not bb_equals(F, pt, 4)


def test_nu_tau_values():
    d = 3
    s2 = ProjectivePoint([0, 1, 0])
    nu, taus = nu_tau(f1(d), s2)
    assert nu == 1 and taus == [(None, d)]  # radial of maximal order d-1
    nu, taus = nu_tau(f1(d), ORIGIN)
    assert nu == d
    nu, _ = nu_tau(f2(d), ORIGIN)
    assert nu == d


def test_tangency_orders():
    d = 3
    G = g_family(d, Fraction(1))
    assert tangency_order(G, (0, 1), ORIGIN) == d  # the line y = 0
    assert tangency_order(f1(d), (1, 0), ORIGIN) is None  # x = 0 is invariant
    W = radial_perturbation(d, [0, 0, 1])  # P = y^d
    assert tangency_order(W, (0, 1), ORIGIN) is None  # y = 0 invariant here
    assert tangency_order(W, (1, 0), ORIGIN) == d
    assert tangency_order(W, (1, -1), ORIGIN) == d


def test_tangency_matches_intersection_multiplicity_oracle():
    """Derivative-criterion tangency equals Fulton intersection numbers (100 cases)."""
    rng = random.Random(42)
    ring = PolyRing(QQ, ("x", "y"))
    checked = 0
    while checked < 100:
        d = rng.choice((2, 3))
        # random foliation singular at the origin: components with no constant term
        A = {}
        B = {}
        for _ in range(6):
            e = (rng.randint(0, d), rng.randint(0, d))
            if sum(e) == 0 or sum(e) > d + 1:
                continue
            A[e] = rng.randint(-3, 3)
            e2 = (rng.randint(0, d), rng.randint(0, d))
            if 0 < sum(e2) <= d + 1:
                B[e2] = rng.randint(-3, 3)
        X1 = ring.poly(A)
        X2 = ring.poly(B)
        if X1.is_zero() or X2.is_zero():
            continue
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        if a == 0 and b == 0:
            continue
        # P(t) valuation along the line
        tring = PolyRing(QQ, ("t",))
        t = tring.var("t")
        images = {"x": t.scale(b), "y": t.scale(-a)}
        P = X1.compose(images, tring).scale(a) + X2.compose(images, tring).scale(b)
        val = None if P.is_zero() else min(e[0] for e in P.terms)
        # oracle: I_0(line, a*X1 + b*X2) by the recursive intersection algorithm
        line = ring.var("x").scale(a) + ring.var("y").scale(b)
        lie = X1.scale(a) + X2.scale(b)
        if lie.is_zero():
            continue
        oracle = intersection_multiplicity(line, lie)
        if val is None:
            assert oracle is None
        else:
            assert oracle == val, (X1.to_string(), X2.to_string(), (a, b))
        checked += 1


def test_kappa_lambda_and_witnesses():
    d = 3
    G = g_family(d, Fraction(2))
    kl = kappa_and_lambda(G, ORIGIN)
    assert kl["kappa"] == d and kl["witness"] is not None
    W = radial_perturbation(d, [0, 0, 1])  # x dy - y dx + y^d dy
    kl = kappa_and_lambda(W, ORIGIN)
    assert kl["tau"] == d and kl["kappa"] == d


def test_lambda_cardinality_bound():
    """#Lambda(F, s) <= tau + 1 on random foliations with a singular point at the origin."""
    rng = random.Random(9)
    ring = PROJ_RING
    done = 0
    while done < 50:
        d = 3
        A = random_homogeneous(rng, PolyRing(QQ, ("x", "y")), rng.randint(1, d), 3)
        B = random_homogeneous(rng, PolyRing(QQ, ("x", "y")), rng.randint(1, d), 3)
        A = A.map_into(ring)
        B = B.map_into(ring)
        if A.is_zero() or B.is_zero():
            continue
        try:
            F = Foliation.from_affine(A, B, "z")
        except Exception:
            continue
        if F.degree < 2:
            continue
        try:
            kl = kappa_and_lambda(F, ORIGIN)
        except (ValueError, ArithmeticError):
            continue
        assert kl["lambda_size"] <= kl["tau"] + 1
        done += 1


def test_classification_tags():
    d = 3
    profs = classify(f1(d), ProjectivePoint([0, 1, 0]))
    assert profs[0].tag == f"radial({d - 1})"
    assert profs[0].bb == 4
    profs = classify(f1(d), ORIGIN)
    assert profs[0].tag == "degenerate" and profs[0].mu == d * d + d
    profs = classify(g_family(d, 1), ORIGIN)
    assert profs[0].tag == f"quasi-radial({d - 1})"
    assert profs[0].witness is not None
    # tau >= nu at every profiled point
    for F in (f1(d), f2(d), g_family(d, 1)):
        for pt in singular_points(F).points:
            for pr in classify(F, pt):
                if pr.tau is not None:
                    assert pr.tau >= pr.nu


def test_quasi_radial_witness_reverified():
    d = 3
    for F in (h1(d), h12(d), g_family(d, Fraction(3))):
        hits = quasi_radial_maximal(F)
        assert hits
        for pt, line in hits:
            assert tangency_order(F, line, pt) == d


def test_u1_membership_matches_closed_form():
    for d in (2, 3):
        for gam in (Fraction(0), Fraction(1), Fraction(-2), Fraction(5, 3)):
            res = u1_membership(g_family(d, gam))
            crit = gam * (gam ** (d + 1) + Fraction((d + 1) ** (d + 1), d**d)) != 0
            assert res["member"] == crit
            assert not res["conditional"]


def test_u1_f1_not_member():
    assert not u1_membership(f1(3))["member"]


def test_tau_has_at_most_two_exceptional_lines_in_u1():
    # Prop (ii): in U1 every singular point has at most 2 exceptional lines
    d = 3
    G = g_family(d, Fraction(1))
    kl = kappa_and_lambda(G, ORIGIN)
    assert kl["lambda_size"] <= 2


def test_unrepresentable_points_reported_honestly():
    # the y-coordinates over the x-packet need a second extension; the locus
    # must come back conditional with an explicit note, never silently short
    F = Foliation.from_affine(Y**2 - X**3 - 2, X**5 - 3, "z")
    loc = singular_points(F)
    assert loc.complete is None
    assert any("second" in n or "extension" in n for n in loc.notes)
    res = u1_membership(F)
    assert res["conditional"]


def test_random_foliations_certify_complete_loci():
    # exercises packets, modulus splits and spurious-root filtering at scale
    rng = random.Random(2718)
    done = 0
    while done < 25:
        d = rng.choice((2, 3))
        try:
            A = random_homogeneous(rng, PROJ_RING, d, 3)
            B = random_homogeneous(rng, PROJ_RING, d, 3)
            C = random_homogeneous(rng, PROJ_RING, d, 3).eval_partial({"z": 0})
            F = Foliation.from_abc(A, B, C)
        except Exception:
            continue
        if F.degree != d:
            continue
        loc = singular_points(F)
        if loc.complete:
            assert loc.milnor_sum == d * d + d + 1
        else:
            assert loc.complete is None  # an honest unknown, never a false claim
        done += 1

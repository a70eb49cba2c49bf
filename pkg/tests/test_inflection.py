import random
from fractions import Fraction

import pytest

from planefol.corpus import f0, f1, f2, h1, h2, h12, jouanolou, translation_perturbation
from planefol.foliation import Foliation, PROJ_RING
from planefol.inflection import (
    decompose_divisor,
    extactic_polynomial,
    flex_order,
    inflection_divisor,
    is_convex,
    sigma2_membership,
    squarefree_mod_p,
    u2_membership,
)
from planefol.local import ProjectivePoint, singular_points, tangency_order

from helpers import random_homogeneous

X, Y, Z = (PROJ_RING.var(v) for v in ("x", "y", "z"))


def test_divisors_of_the_minimal_models():
    for d in (2, 3, 4):
        div1 = inflection_divisor(f1(d))
        assert dict((f.to_string(), m) for f, m in div1.factors) == {"x": d + 1, "y": 2 * d - 1}
        inv, tr = decompose_divisor(f1(d), div1)
        assert tr.degree == 0  # convex
        div2 = inflection_divisor(f2(d))
        assert dict((f.to_string(), m) for f, m in div2.factors) == {"x": 2 * d + 1, "y": d - 1}
        inv, tr = decompose_divisor(f2(d), div2)
        assert dict((f.to_string(), m) for f, m in inv.factors) == {"x": 2 * d + 1}
        assert dict((f.to_string(), m) for f, m in tr.factors) == {"y": d - 1}


def test_divisor_of_the_dimension7_family():
    d = 3
    lam = Fraction(2)
    inv, tr = decompose_divisor(f0(d, lam))
    assert dict((f.to_string(), m) for f, m in inv.factors) == {"y": 1, "z": 2 * d - 1}
    assert [m for _, m in tr.factors] == [1]
    ttr = tr.factors[0][0]
    # (lam-1) x z^(d-1) - ((d-1) lam + 1) y^d up to normalization
    ref = ((lam - 1) * X * Z ** (d - 1) - ((d - 1) * lam + 1) * Y**d).normalized()
    assert (ttr - ref).is_zero()


def test_jouanolou_divisor_formula_and_u2():
    for d in (2, 3, 4):
        E = extactic_polynomial(jouanolou(d))
        ref = (
            X ** (2 * d + 1) * Z ** (d - 1)
            + Y ** (2 * d + 1) * X ** (d - 1)
            + Z ** (2 * d + 1) * Y ** (d - 1)
            - 3 * X**d * Y**d * Z**d
        ).normalized()
        assert (E - ref).is_zero() or (E + ref).is_zero()
        res = u2_membership(jouanolou(d))
        assert res["member"] and res["transverse"] and res["reduced"]
        assert squarefree_mod_p(E, 2)


def test_u2_failures():
    assert not u2_membership(f1(3))["member"]  # invariant lines
    res = u2_membership(h2(3))
    assert not res["member"] and not res["reduced"]  # (xy)^(d-1) transverse part


def test_h2_divisor_structure():
    d = 3
    inv, tr = decompose_divisor(h2(d))
    assert dict((f.to_string(), m) for f, m in tr.factors) == {"x": d - 1, "y": d - 1}
    assert inv.degree == d + 2  # z and the d+1 lines x^(d+1) = y^(d+1)
    prod = inv.product(PROJ_RING)
    ref = (Z * (X ** (d + 1) - Y ** (d + 1))).normalized()
    assert (prod.normalized() - ref).is_zero()


def test_convexity():
    d = 3
    assert is_convex(f1(d))
    assert not is_convex(f2(d))
    assert is_convex(h1(d))
    assert not is_convex(f0(d, 2))


def test_inflection_degree_is_3d_on_random_foliations():
    rng = random.Random(17)
    done = 0
    while done < 30:
        d = rng.choice((2, 3))
        try:
            A = random_homogeneous(rng, PROJ_RING, d, 2)
            B = random_homogeneous(rng, PROJ_RING, d, 2)
            C = random_homogeneous(rng, PROJ_RING, d, 2).eval_partial({"z": 0})
            F = Foliation.from_abc(A, B, C)
        except Exception:
            continue
        if F.degree != d or not F.singular_scheme_is_finite():
            continue
        try:
            div = inflection_divisor(F)
        except ValueError:
            continue
        assert div.degree == 3 * d
        done += 1


def test_decomposition_multiplicativity():
    for F in (f2(3), h2(3), f0(3, 2)):
        div = inflection_divisor(F)
        inv, tr = decompose_divisor(F, div)
        lhs = (inv.product(PROJ_RING) * tr.product(PROJ_RING)).normalized()
        assert (lhs - div.product(PROJ_RING).normalized()).is_zero()


def test_flex_orders():
    d = 3
    FJ = jouanolou(d)
    res = flex_order(FJ, ProjectivePoint([0, 0, 1]))
    assert res["kind"] == "transverse" and res["tangency"] == d
    # generic point of y = 0 for the mixed homogeneous model
    H = h12(d)
    res = flex_order(H, ProjectivePoint([1, 0, 1]))
    assert res["kind"] == "transverse" and res["tangency"] == d
    # any regular point on an invariant line of the convex model is a trivial flex
    res = flex_order(f1(d), ProjectivePoint([0, 2, 1]))
    assert res["kind"] == "trivial"
    with pytest.raises(ValueError):
        flex_order(f1(d), ProjectivePoint([0, 0, 1]))  # singular


def test_flex_order_equals_tangency_oracle_on_random_points():
    rng = random.Random(23)
    done = 0
    while done < 100:
        F = jouanolou(rng.choice((2, 3))) if rng.random() < 0.5 else h2(rng.choice((2, 3)))
        pt = ProjectivePoint([rng.randint(-4, 4), rng.randint(-4, 4), 1])
        try:
            res = flex_order(F, pt)
        except ValueError:
            continue
        if res["kind"] == "trivial":
            assert tangency_order(F, res["tangent"], pt) is None
        else:
            assert tangency_order(F, res["tangent"], pt) == res["tangency"]
        done += 1


def test_sigma2_memberships():
    for d in (2, 3):
        assert sigma2_membership(jouanolou(d))["member"]
        assert sigma2_membership(h2(d))["member"]
    for d in (3, 4):
        co = [0] * (d + 1)
        co[d] = Fraction(1, d)
        co[2] = Fraction(1, 2)
        res = sigma2_membership(translation_perturbation(d, co))
        assert not res["member"]


def test_sigma2_witness_has_exact_order():
    d = 3
    res = sigma2_membership(h2(d))
    pt = res["witness"]
    assert pt is not None
    out = flex_order(h2(d), pt)
    assert out["kind"] == "transverse" and out["tangency"] == d


def test_invariant_curves_in_divisor_are_lines():
    # every invariant factor of the inflection divisors in the corpus is a
    # product of lines (binary forms after the rational-line extraction)
    from planefol.inflection import _is_binary_form

    for F in (f1(3), f2(3), h1(3), h2(3), h12(3), f0(3, 2)):
        inv, _ = decompose_divisor(F)
        for f, _m in inv.factors:
            assert f.total_degree() == 1 or _is_binary_form(f)


def test_u2_jouanolou_higher_degrees():
    for d in (5, 6):
        res = u2_membership(jouanolou(d))
        assert res["member"] and res["transverse"] and res["reduced"]

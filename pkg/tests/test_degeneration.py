from fractions import Fraction

import pytest

from planefol.corpus import (
    f0,
    f1,
    f2,
    g_family,
    h1,
    h2,
    h12,
    jouanolou,
    radial_perturbation,
    translation_perturbation,
)
from planefol.degeneration import (
    AbsenceReport,
    DegenerationCertificate,
    certify_f1_degeneration,
    certify_f2_degeneration,
    certify_h12_degeneration,
    eps_map,
    eps_power_diag,
    limit_family,
    LimitDiagnosis,
)
from planefol.foliation import Foliation, PROJ_RING
from planefol.inflection import decompose_divisor
from planefol.polynomials import PolyRing
from planefol.rings import QQ
from planefol.symmetry import symmetry_space

X, Y = PROJ_RING.var("x"), PROJ_RING.var("y")
ERING = PolyRing(QQ, ("eps",))


def test_limit_identity_is_trivial():
    F = jouanolou(3)
    phi = eps_power_diag(0, 0, 0)
    lim, k = limit_family(F, phi)
    assert k == 0 and lim.same_class(F)


def test_limit_of_translation_family():
    # dx + P(y) dy scaled by (a_d eps^-(d+1) x, eps^-1 y) tends to dx + y^d dy
    for d in (2, 3, 4, 5):
        co = [0] * (d + 1)
        co[d] = 4
        co[1] = 3
        co[0] = 1
        F = translation_perturbation(d, co)
        phi = eps_map([[ERING.const(4), 0, 0], [0, ERING.var("eps") ** d, 0], [0, 0, ERING.var("eps") ** (d + 1)]])
        lim, _ = limit_family(F, phi)
        assert lim.same_class(Foliation.from_affine(PROJ_RING.one(), Y**d, "z"))


def test_limit_of_radial_family():
    for d in (2, 3, 4, 5):
        co = [0] * d
        co[0] = 2
        co[d - 1] = 7
        F = radial_perturbation(d, co)
        phi = eps_map([[ERING.const(7), 0, 0], [0, ERING.var("eps") ** (d - 1), 0], [0, 0, ERING.var("eps") ** d]])
        lim, _ = limit_family(F, phi)
        assert lim.same_class(Foliation.from_affine(-Y, X + Y**d, "z"))


def test_limit_onto_homogeneous_part():
    # (x/eps, y/eps) extracts the top homogeneous part of the G family
    d = 3
    G = g_family(d, Fraction(1))
    lim, _ = limit_family(G, eps_power_diag(0, 0, 1))
    assert lim.same_class(Foliation.from_affine(X**d, -(Y**d), "z"))


def test_degenerate_limit_diagnosed():
    # scaling y alone collapses the convex model onto a form with a common factor
    F = f1(3)
    lim, _ = limit_family(F, eps_power_diag(0, 1, 0))
    assert isinstance(lim, LimitDiagnosis)


def test_certify_f1_successes():
    for d in (2, 3, 4):
        for F in (h1(d), g_family(d, Fraction(2))):
            cert = certify_f1_degeneration(F)
            assert isinstance(cert, DegenerationCertificate)
            assert cert.replay()
            assert cert.target.same_class(f1(d))


def test_certify_f1_jouanolou_absent_with_bb_reason():
    for d in (2, 3, 4):
        rep = certify_f1_degeneration(jouanolou(d))
        assert isinstance(rep, AbsenceReport)
        assert rep.reason == "bb-obstruction" and rep.proof


def test_certify_f1_bespoke_shape():
    d = 4
    F = radial_perturbation(d, [1, 0, 0, 3])  # P = y + 3 y^4, kappa = 1 < d
    cert = certify_f1_degeneration(F)
    assert isinstance(cert, DegenerationCertificate)
    assert any("radial-perturbation" in n for n in cert.notes)


def test_certify_f2_successes():
    for d in (2, 3, 4):
        for F in (jouanolou(d), h2(d)):
            cert = certify_f2_degeneration(F)
            assert isinstance(cert, DegenerationCertificate)
            assert cert.replay()
            assert cert.target.same_class(f2(d))


def test_certify_f2_f0_absence_with_itr_reason():
    for d in (3, 4, 5):
        lam = Fraction(-1, d - 1)
        _, tr = decompose_divisor(f0(d, lam))
        assert tr.degree == 1  # the transverse part collapses to a single line
        rep = certify_f2_degeneration(f0(d, lam))
        assert isinstance(rep, AbsenceReport)
        assert rep.reason == "itr-obstruction" and rep.proof


def test_certify_f2_bespoke_shape():
    d = 4
    co = [0] * (d + 1)
    co[d] = Fraction(1, d)
    co[2] = Fraction(1, 2)
    F = translation_perturbation(d, co)  # no maximal flex, but still degenerates
    cert = certify_f2_degeneration(F)
    assert isinstance(cert, DegenerationCertificate)
    assert any("translation-perturbation" in n for n in cert.notes)


def test_certify_h12_with_chained_certificates():
    for d in (2, 3):
        cert = certify_h12_degeneration(h12(d))
        assert isinstance(cert, DegenerationCertificate)
        assert set(cert.chained) == {"f1", "f2"}
        assert cert.replay()


def test_certify_h12_perturbed_model():
    d = 3
    # lambda * model top part + lower-order term
    A = 2 * (X**d + Y**d) + PROJ_RING.one()
    B = 2 * X**d
    F = Foliation.from_affine(A, B, "z")
    cert = certify_h12_degeneration(F)
    assert isinstance(cert, DegenerationCertificate)
    assert cert.replay()


def test_certify_h12_rotated_basis():
    d = 3
    # a genuine rational conjugate of a perturbed model must still certify
    from planefol.foliation import ProjectiveMap

    A = 2 * (X**d + Y**d) + PROJ_RING.one()
    B = 2 * X**d
    F0 = Foliation.from_affine(A, B, "z")
    phi = ProjectiveMap([[1, 1, 0], [1, -1, 0], [0, 0, 1]])
    F = F0.pullback(phi)
    cert = certify_h12_degeneration(F)
    assert isinstance(cert, DegenerationCertificate)
    assert cert.replay()


def test_certify_h12_jouanolou_absent():
    rep = certify_h12_degeneration(jouanolou(3))
    assert isinstance(rep, AbsenceReport)
    assert rep.reason == "no-invariant-line" and rep.proof


def test_orbit_dimension_monotonicity_on_certificates():
    # dim O(target) < dim O(source) for every emitted certificate
    cases = [
        (h1(3), certify_f1_degeneration(h1(3))),
        (jouanolou(3), certify_f2_degeneration(jouanolou(3))),
        (g_family(3, Fraction(2)), certify_f1_degeneration(g_family(3, Fraction(2)))),
    ]
    for source, cert in cases:
        assert isinstance(cert, DegenerationCertificate)
        ds = symmetry_space(source)["dim_orbit"]
        dt = symmetry_space(cert.target)["dim_orbit"]
        assert dt < ds


def test_itr_monotonicity_on_certificates():
    # deg I_tr(source) >= deg I_tr(target) along degenerations
    for source, target_fn in ((jouanolou(3), f2), (h2(3), f2), (h1(3), f1), (g_family(3, Fraction(1)), f1)):
        cert = (certify_f2_degeneration if target_fn is f2 else certify_f1_degeneration)(source)
        assert isinstance(cert, DegenerationCertificate)
        _, tr_s = decompose_divisor(source)
        _, tr_t = decompose_divisor(cert.target)
        assert tr_s.degree >= tr_t.degree


def test_convexity_preserved_by_the_convex_certificate():
    # a computed limit of a convex family is convex
    cert = certify_f1_degeneration(h1(3))
    assert isinstance(cert, DegenerationCertificate)
    from planefol.inflection import is_convex

    assert is_convex(h1(3)) and is_convex(cert.target)

from fractions import Fraction

import pytest

from planefol.corpus import CORPUS, build, f0, f1, f2, g_family, h1, h2, h12, jouanolou
from planefol.foliation import PROJ_RING
from planefol.parser import ParseError, parse_form, parse_polynomial, print_form, print_triple


def test_parse_form_examples():
    F = parse_form("x*dy - 2*y*dx + y^2*dy @ z=1")
    assert F.same_class(f0(2, 2))
    assert parse_form("dx").degree == 0
    F2 = parse_form("y^3*dx + x^3*(x*dy - y*dx)")
    assert F2.same_class(f1(3))


def test_parse_rejections():
    with pytest.raises(ParseError) as e:
        parse_form("x*dx + x*dy")
    assert "common factor x" in str(e.value)
    with pytest.raises(ParseError):
        parse_form("x + y")  # no differential
    with pytest.raises(ParseError):
        parse_form("dx*dy")
    with pytest.raises(ParseError):
        parse_form("z*dx @ z=1")
    with pytest.raises(ParseError) as e:
        parse_form("x*dy + $")
    assert "position" in str(e.value)


def test_parse_triple():
    F = jouanolou(3)
    assert parse_form(print_triple(F)).same_class(F)


def test_unicode_minus_accepted():
    F = parse_form("x*dy − 2*y*dx + y^2*dy @ z=1")
    assert F.same_class(f0(2, 2))


def test_round_trip_on_full_corpus():
    from planefol.corpus import radial_perturbation, translation_perturbation

    cases = []
    for d in range(2, 7):
        cases += [f1(d), f2(d), h1(d), h2(d), h12(d), jouanolou(d)]
        cases += [g_family(d, Fraction(3, 2)), f0(d, Fraction(-7, 3))]
        co = [0] * d
        co[0], co[d - 1] = 1, 2
        cases.append(radial_perturbation(d, co))
        co2 = [1] + [0] * d
        co2[d] = Fraction(1, 3)
        cases.append(translation_perturbation(d, co2))
    for F in cases:
        assert parse_form(print_form(F, "z")).same_class(F)
        assert parse_form(print_triple(F)).same_class(F)
        # parse -> print -> parse is the identity on canonical text
        text = print_form(F, "z")
        assert print_form(parse_form(text), "z") == text


def test_polynomial_parse_errors_have_positions():
    with pytest.raises(ParseError) as e:
        parse_polynomial("3*x^", PROJ_RING)
    assert e.value.position >= 3
    with pytest.raises(ParseError):
        parse_polynomial("3*w", PROJ_RING)


def test_corpus_builders_all_reachable():
    assert build("f1", d=3).same_class(f1(3))
    assert build("f0", d=3, lam=Fraction(1, 2)).same_class(f0(3, Fraction(1, 2)))
    assert build("g", d=2, gamma=2).same_class(g_family(2, 2))
    with pytest.raises(KeyError):
        build("nope", d=3)
    with pytest.raises(ValueError):
        build("f1")
    assert set(CORPUS) >= {"f1", "f2", "h1", "h2", "h12", "g", "jouanolou", "f0"}

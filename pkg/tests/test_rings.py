from fractions import Fraction

import pytest

from planefol.rings import (
    NonUnitError,
    PrimeDomain,
    QQ,
    QuotientDomain,
    normalize_rat,
    rat_from_string,
    rat_to_string,
    upoly_divmod,
    upoly_gcd,
    upoly_is_squarefree,
    upoly_mul,
    upoly_xgcd,
)


def test_rational_string_round_trip():
    assert rat_from_string("3/4") == Fraction(3, 4)
    assert rat_from_string("-7") == -7
    assert rat_to_string(Fraction(10, 4)) == "5/2"
    assert rat_to_string(normalize_rat(Fraction(8, 4))) == "2"


def test_upoly_divmod_small_divisor():
    # t^2 - 2 divided by 2t: quotient t/2, remainder -2
    q, r = upoly_divmod([-2, 0, 1], [0, 2])
    assert q == [0, Fraction(1, 2)]
    assert r == [-2]


def test_upoly_gcd_and_xgcd():
    a = upoly_mul([1, 1], [2, 1])  # (1+t)(2+t)
    b = upoly_mul([1, 1], [-3, 1])
    g = upoly_gcd(a, b)
    assert g == [1, 1]
    g2, s, t = upoly_xgcd(a, b)
    assert g2 == [1, 1]
    lhs = upoly_mul(s, a)
    rhs = upoly_mul(t, b)
    total = [0] * max(len(lhs), len(rhs))
    for i, v in enumerate(lhs):
        total[i] += v
    for i, v in enumerate(rhs):
        total[i] += v
    while total and not total[-1]:
        total.pop()
    assert total == [1, 1]


def test_squarefree_detection():
    assert upoly_is_squarefree([-2, 0, 1])  # t^2 - 2
    assert not upoly_is_squarefree(upoly_mul([1, 1], [1, 1]))


def test_prime_field():
    F = PrimeDomain(7)
    assert F.mul(3, 5) == 1
    assert F.invert(3) == 5
    assert F.coerce(Fraction(1, 2)) == 4
    with pytest.raises(ValueError):
        PrimeDomain(6)


def test_quotient_invert_sqrt2():
    K = QuotientDomain([-2, 0, 1])  # t^2 = 2
    t = K.generator()
    inv = K.invert(t)
    assert K.to_string(inv) == "1/2*t"
    assert K.eq(K.mul(inv, t), K.one)


def test_quotient_invert_constant_cyclotomic():
    # inverting d+1 = 4 in Q[t]/(t^4 - 1)
    K = QuotientDomain([-1, 0, 0, 0, 1])
    inv = K.invert(K.coerce(4))
    assert K.to_string(inv) == "1/4"


def test_quotient_zero_divisor_reports_factor():
    K = QuotientDomain([-1, 0, 1])  # t^2 - 1
    with pytest.raises(NonUnitError) as exc:
        K.invert(K.from_lift([-1, 1]))  # t - 1
    assert exc.value.factor == [-1, 1]


def test_quotient_requires_squarefree_modulus():
    with pytest.raises(ValueError):
        QuotientDomain([1, 2, 1])  # (t+1)^2


def test_quotient_unit_times_inverse_is_one():
    K = QuotientDomain([-1, -1, 0, 1])  # t^3 - t - 1 (irreducible)
    e = K.from_lift([2, 5, 1])
    inv = K.invert(e)
    assert K.eq(K.mul(e, inv), K.one)


def test_quotient_split_projection():
    K = QuotientDomain([-1, 0, 1])
    A, B = K.split([-1, 1])
    assert A.deg == 1 and B.deg == 1
    e = K.from_lift([3, 2])  # 3 + 2t
    assert K.project(A, e) == A.coerce(5)  # t = 1
    assert K.project(B, e) == B.coerce(1)  # t = -1


def test_quotient_negative_powers():
    K = QuotientDomain([-1, 0, 0, 0, 1])
    t = K.generator()
    assert K.eq(K.pow(t, -2), K.pow(t, 2))

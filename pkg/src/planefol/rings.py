"""Exact coefficient domains: rationals, prime fields and quotient rings Q[t]/(m).

Rational values are stored as plain ``int`` whenever the denominator is 1 and
as ``fractions.Fraction`` otherwise; every operation is exact.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from math import gcd as int_gcd
from typing import Union

Rat = Union[int, Fraction]


class NonUnitError(ArithmeticError):
    """Inversion of a zero divisor in a quotient ring.

    ``factor`` is a proper monic divisor of the modulus witnessing the split.
    """

    def __init__(self, factor):
        super().__init__("element is not a unit")
        self.factor = factor


def normalize_rat(x: Rat) -> Rat:
    """Collapse Fractions with denominator 1 to plain ints."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def rat_from_string(text: str) -> Rat:
    """Parse 'p' or 'p/q' into an exact rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return normalize_rat(Fraction(int(num), int(den)))
    return int(text)


def rat_to_string(x: Rat) -> str:
    x = normalize_rat(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


# ---------------------------------------------------------------------------
# Dense univariate arithmetic over Q (coefficient lists, index = exponent).
# Used by the quotient rings and by root-finding helpers.
# ---------------------------------------------------------------------------


def upoly_trim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def upoly_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = normalize_rat(out[i] + v)
    return upoly_trim(out)


def upoly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] = normalize_rat(out[i] - v)
    return upoly_trim(out)


def upoly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return upoly_trim([normalize_rat(v) for v in out])


def upoly_scale(a: list, s: Rat) -> list:
    if not s:
        return []
    return [normalize_rat(v * s) for v in a]


def upoly_divmod(a: list, b: list) -> tuple:
    """Quotient and remainder in Q[t]; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = upoly_trim(list(a))
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv_lead = Fraction(1, 1) / Fraction(b[-1])
    while len(a) >= len(b):
        if not a[-1]:
            a.pop()
            continue
        k = len(a) - len(b)
        coef = normalize_rat(a[-1] * inv_lead)
        q[k] = coef
        for i in range(len(b) - 1):
            a[k + i] = normalize_rat(a[k + i] - coef * b[i])
        a.pop()
    return upoly_trim(q), upoly_trim(a)


def upoly_monic(a: list) -> list:
    if not a or a[-1] == 1:
        return list(a)
    inv = Fraction(1, 1) / Fraction(a[-1])
    return [normalize_rat(v * inv) for v in a]


def upoly_gcd(a: list, b: list) -> list:
    """Monic gcd in Q[t]."""
    a, b = list(a), list(b)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    return upoly_monic(a)


def upoly_xgcd(a: list, b: list) -> tuple:
    """(g, s, t) with g = monic gcd and s*a + t*b = g."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = upoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, upoly_sub(s0, upoly_mul(q, s1))
        t0, t1 = t1, upoly_sub(t0, upoly_mul(q, t1))
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    inv = normalize_rat(Fraction(1, 1) / Fraction(lead))
    return upoly_scale(r0, inv), upoly_scale(s0, inv), upoly_scale(t0, inv)


def upoly_derivative(a: list) -> list:
    return upoly_trim([normalize_rat(i * a[i]) for i in range(1, len(a))])


def upoly_is_squarefree(a: list) -> bool:
    g = upoly_gcd(a, upoly_derivative(a))
    return len(g) <= 1


def upoly_eval(a: list, x: Rat) -> Rat:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return normalize_rat(acc)


def upoly_to_string(a: list, var: str = "t") -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            parts.append(rat_to_string(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{rat_to_string(c)}*{mono}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# ---------------------------------------------------------------------------
# Domains
# ---------------------------------------------------------------------------


class RationalDomain:
    """The field Q; elements are int or Fraction."""

    char = 0
    is_field = True

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)

    @staticmethod
    def is_zero(a) -> bool:
        return not a

    @staticmethod
    def eq(a, b) -> bool:
        return a == b

    zero = 0
    one = 1

    @staticmethod
    def coerce(x):
        if isinstance(x, (int, Fraction)):
            return normalize_rat(x)
        if isinstance(x, str):
            return rat_from_string(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    @staticmethod
    def is_unit(a) -> bool:
        return bool(a)

    @staticmethod
    def invert(a):
        if not a:
            raise ZeroDivisionError("inverse of 0 in Q")
        return normalize_rat(Fraction(1, 1) / Fraction(a))

    @staticmethod
    def to_string(a) -> str:
        return rat_to_string(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalDomain)

    def __hash__(self):
        return hash("QQ")


QQ = RationalDomain()


class PrimeDomain:
    """The prime field F_p; elements are ints in [0, p)."""

    is_field = True

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, min(p, 1000)) if q * q <= p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    @staticmethod
    def is_zero(a) -> bool:
        return not a

    @staticmethod
    def eq(a, b) -> bool:
        return a == b

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def is_unit(self, a) -> bool:
        return a % self.p != 0

    def invert(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, -1, self.p)

    @staticmethod
    def to_string(a) -> str:
        return str(a)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeDomain) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class QuotientDomain:
    """Q[t]/(m) for a monic squarefree modulus m; elements are coefficient tuples.

    The modulus is not required to be irreducible: the ring is a product of
    number fields, and "nonzero" is deliberately read as "unit", i.e. nonzero
    simultaneously at every conjugate root of m.  Inverting a zero divisor
    raises NonUnitError carrying the discovered factor of m.
    """

    is_field = False
    char = 0

    def __init__(self, modulus, var: str = "t"):
        m = upoly_trim([normalize_rat(Fraction(c) if not isinstance(c, int) else c) for c in modulus])
        if len(m) < 2:
            raise ValueError("modulus must have degree >= 1")
        m = upoly_monic(m)
        if not upoly_is_squarefree(m):
            raise ValueError("modulus must be squarefree")
        self.modulus = tuple(m)
        self.var = var
        self.deg = len(m) - 1
        self.zero = (0,) * self.deg
        one = [0] * self.deg
        one[0] = 1
        self.one = tuple(one)

    def _reduce(self, coeffs: list) -> tuple:
        _, r = upoly_divmod(coeffs, list(self.modulus))
        out = [0] * self.deg
        for i, v in enumerate(r):
            out[i] = v
        return tuple(out)

    def from_lift(self, coeffs) -> tuple:
        return self._reduce([normalize_rat(c) for c in coeffs])

    def generator(self) -> tuple:
        return self.from_lift([0, 1])

    def lift(self, a) -> list:
        return upoly_trim(list(a))

    def add(self, a, b):
        return tuple(normalize_rat(x + y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(normalize_rat(x - y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(normalize_rat(-x) for x in a)

    def mul(self, a, b):
        return self._reduce(upoly_mul(self.lift(a), self.lift(b)))

    @staticmethod
    def is_zero(a) -> bool:
        return not any(a)

    @staticmethod
    def eq(a, b) -> bool:
        return a == b

    def coerce(self, x):
        if isinstance(x, tuple) and len(x) == self.deg:
            return tuple(normalize_rat(v) for v in x)
        if isinstance(x, (int, Fraction)):
            out = [0] * self.deg
            out[0] = normalize_rat(x)
            return tuple(out)
        if isinstance(x, (list,)):
            return self.from_lift(x)
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def unit_factor(self, a) -> list:
        """Monic gcd of the lift of a with the modulus (trivial iff a is a unit)."""
        lift = self.lift(a)
        if not lift:
            return list(self.modulus)
        return upoly_gcd(list(self.modulus), lift)

    def is_unit(self, a) -> bool:
        return len(self.unit_factor(a)) == 1

    def invert(self, a):
        lift = self.lift(a)
        if not lift:
            raise NonUnitError(list(self.modulus))
        g, _, t = upoly_xgcd(list(self.modulus), lift)
        if len(g) != 1:
            raise NonUnitError(g)
        return self._reduce(t)

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.invert(a), -n)
        acc = self.one
        base = a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def to_string(self, a) -> str:
        return upoly_to_string(self.lift(a), self.var)

    def split(self, factor) -> tuple:
        """Split the ring along a proper monic factor of the modulus."""
        f = upoly_monic(upoly_trim(list(factor)))
        q, r = upoly_divmod(list(self.modulus), f)
        if r:
            raise ValueError("not a factor of the modulus")
        if len(f) < 2 or len(q) < 2:
            raise ValueError("split requires a proper factor")
        return QuotientDomain(f, self.var), QuotientDomain(q, self.var)

    def project(self, other: "QuotientDomain", a) -> tuple:
        """Image of a under Q[t]/(m) -> Q[t]/(m') for m' | m."""
        return other.from_lift(self.lift(a))

    def __repr__(self):
        return f"QQ[{self.var}]/({upoly_to_string(list(self.modulus), self.var)})"

    def __eq__(self, other):
        return isinstance(other, QuotientDomain) and other.modulus == self.modulus and other.var == self.var

    def __hash__(self):
        return hash(("QQ/", self.modulus, self.var))


def rat_int_content(values) -> Fraction:
    """Positive rational c with values/c coprime integers (0 for empty input)."""
    num = 0
    den = 1
    for v in values:
        if type(v) is int:
            num = int_gcd(num, v)
            continue
        f = Fraction(v)
        num = int_gcd(num, abs(f.numerator))
        den = den * f.denominator // int_gcd(den, f.denominator)
    if num == 0:
        return Fraction(0)
    return Fraction(num, den)

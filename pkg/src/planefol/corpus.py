"""The bundled family of benchmark foliations, one builder per named family."""

from __future__ import annotations

from fractions import Fraction

from .foliation import PROJ_RING, Foliation
from .rings import normalize_rat


def _xyz():
    return PROJ_RING.var("x"), PROJ_RING.var("y"), PROJ_RING.var("z")


def f1(d: int) -> Foliation:
    """y^d dx + x^d (x dy - y dx): the convex minimal-orbit model."""
    _check_degree(d)
    x, y, _ = _xyz()
    return Foliation.from_affine(y**d - x**d * y, x ** (d + 1), "z")


def f2(d: int) -> Foliation:
    """x^d dx + y^d (x dy - y dx): the non-convex minimal-orbit model."""
    _check_degree(d)
    x, y, _ = _xyz()
    return Foliation.from_affine(x**d - y ** (d + 1), x * y**d, "z")


def h1(d: int) -> Foliation:
    """Homogeneous y^d dx - x^d dy."""
    _check_degree(d)
    x, y, _ = _xyz()
    return Foliation.from_affine(y**d, -(x**d), "z")


def h2(d: int) -> Foliation:
    """Homogeneous x^d dx - y^d dy."""
    _check_degree(d)
    x, y, _ = _xyz()
    return Foliation.from_affine(x**d, -(y**d), "z")


def h12(d: int) -> Foliation:
    """Homogeneous (x^d + y^d) dx + x^d dy."""
    _check_degree(d)
    x, y, _ = _xyz()
    return Foliation.from_affine(x**d + y**d, x**d, "z")


def g_family(d: int, gamma) -> Foliation:
    """(x - gamma*y) dy - y dx + x^d dx - y^d dy."""
    _check_degree(d)
    gamma = Fraction(gamma)
    x, y, _ = _xyz()
    A = x**d - y
    B = x - PROJ_RING.const(gamma) * y - y**d
    return Foliation.from_affine(A, B, "z")


def jouanolou(d: int) -> Foliation:
    """(x^d y - 1) dx + (y^d - x^(d+1)) dy, without invariant algebraic curves."""
    _check_degree(d)
    x, y, _ = _xyz()
    return Foliation.from_affine(x**d * y - 1, y**d - x ** (d + 1), "z")


def f0(d: int, lam) -> Foliation:
    """x dy - lambda*y dx + y^d dy, the dimension-7 closed-orbit family."""
    _check_degree(d)
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    x, y, _ = _xyz()
    A = PROJ_RING.const(-lam) * y
    B = x + y**d
    return Foliation.from_affine(A, B, "z")


def radial_perturbation(d: int, p_coeffs) -> Foliation:
    """x dy - y dx + P(y) dy with P(y) = sum p_coeffs[i] y^(i+1), deg P = d, P(0) = 0."""
    _check_degree(d)
    x, y, _ = _xyz()
    P = PROJ_RING.zero()
    for i, cv in enumerate(p_coeffs):
        if cv:
            P = P + PROJ_RING.const(normalize_rat(Fraction(cv))) * y ** (i + 1)
    if P.total_degree() != d:
        raise ValueError("P must have degree exactly d")
    return Foliation.from_affine(-y, x + P, "z")


def translation_perturbation(d: int, p_coeffs) -> Foliation:
    """dx + P(y) dy with P(y) = sum p_coeffs[i] y^i of degree exactly d."""
    _check_degree(d)
    _, y, _ = _xyz()
    P = PROJ_RING.zero()
    for i, cv in enumerate(p_coeffs):
        if cv:
            P = P + PROJ_RING.const(normalize_rat(Fraction(cv))) * y**i
    if P.total_degree() != d:
        raise ValueError("P must have degree exactly d")
    return Foliation.from_affine(PROJ_RING.one(), P, "z")


def _check_degree(d: int):
    if not isinstance(d, int) or d < 2:
        raise ValueError("family is defined for integer degree d >= 2")


CORPUS = {
    "f1": (f1, ("d",)),
    "f2": (f2, ("d",)),
    "h1": (h1, ("d",)),
    "h2": (h2, ("d",)),
    "h12": (h12, ("d",)),
    "g": (g_family, ("d", "gamma")),
    "jouanolou": (jouanolou, ("d",)),
    "f0": (f0, ("d", "lambda")),
    "radial-perturbation": (radial_perturbation, ("d", "p")),
    "translation-perturbation": (translation_perturbation, ("d", "p")),
}


def build(name: str, **params) -> Foliation:
    if name not in CORPUS:
        raise KeyError(f"unknown corpus family {name!r}; known: {sorted(CORPUS)}")
    fn, wanted = CORPUS[name]
    args = []
    for w in wanted:
        key = {"lambda": "lam", "gamma": "gamma", "d": "d", "p": "p"}[w]
        if key not in params:
            raise ValueError(f"family {name!r} needs parameter {w!r}")
        args.append(params[key])
    return fn(*args)

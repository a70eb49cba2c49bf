"""Coordinates on the space of degree-d foliations and orbit-closure certificates.

A foliation omega = A alpha + B beta + C gamma is identified with the point
[xi_1 : ... : xi_(d^2+4d+3)] collecting the coefficients of A and B (interleaved,
ordered inside blocks of increasing z-degree) followed by those of C.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import gcd as int_gcd

from .corpus import f0 as _f0, f1 as _f1, f2 as _f2
from .degeneration import DegenerationCertificate, certify_f2_degeneration
from .foliation import Foliation, PROJ_RING, PROJ_VARS, ProjectiveMap
from .inflection import decompose_divisor
from .linalg import nullspace
from .parser import parse_polynomial
from .polynomials import PolyRing, Polynomial
from .rings import QQ


def xi_dim(d: int) -> int:
    return d * d + 4 * d + 3


def xi_layout(d: int) -> list:
    """positions[i] = ('A'|'B'|'C', exponent tuple) for 1-based index i+1."""
    if d < 1:
        raise ValueError("the identification needs degree >= 1")
    positions = [None] * xi_dim(d)
    offset = 0
    for j in range(d + 1):
        for i in range(d + 1 - j):
            mono = (d - j - i, i, j)
            positions[2 * offset] = ("A", mono)
            positions[2 * offset + 1] = ("B", mono)
            offset += 1
    base = (d + 1) * (d + 2)
    for i in range(d + 1):
        positions[base + i] = ("C", (d - i, i, 0))
    return positions


@dataclass(frozen=True)
class XiPoint:
    degree: int
    coords: tuple  # primitive integers, first nonzero positive

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


def to_xi(F: Foliation) -> XiPoint:
    if F.degree < 1:
        raise ValueError("the identification needs degree >= 1")
    d = F.degree
    A, B, C = F.abc_components()
    by_name = {"A": A, "B": B, "C": C}
    vals = [Fraction(by_name[name].coefficient(mono)) for name, mono in xi_layout(d)]
    den = 1
    for v in vals:
        den = den * v.denominator // int_gcd(den, v.denominator)
    ints = [int(v * den) for v in vals]
    g = 0
    for v in ints:
        g = int_gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return XiPoint(d, tuple(ints))


def from_xi(coords, d: int) -> Foliation:
    if len(coords) != xi_dim(d):
        raise ValueError(f"expected {xi_dim(d)} coordinates")
    terms = {"A": {}, "B": {}, "C": {}}
    for (name, mono), v in zip(xi_layout(d), coords):
        if v:
            terms[name][mono] = v
    A = PROJ_RING.poly(terms["A"])
    B = PROJ_RING.poly(terms["B"])
    C = PROJ_RING.poly(terms["C"])
    return Foliation.from_abc(A, B, C)


# ---------------------------------------------------------------------------
# The bundled closed-orbit certificates
# ---------------------------------------------------------------------------

CERTIFICATE_DEGREES = {"p3": 3, "p4": 4, "p5": 5}


def certificate_ring(d: int) -> PolyRing:
    return PolyRing(QQ, tuple(f"x{i}" for i in range(1, xi_dim(d) + 1)))


def certificate_text(name: str) -> str:
    if name not in CERTIFICATE_DEGREES:
        raise KeyError(f"unknown certificate {name!r}")
    return resources.files("planefol.data").joinpath(f"{name}.txt").read_text()


def certificate_checksum(name: str) -> str:
    return hashlib.sha256(certificate_text(name).encode()).hexdigest()


def load_certificate(name: str) -> Polynomial:
    d = CERTIFICATE_DEGREES[name]
    ring = certificate_ring(d)
    text = certificate_text(name).replace("\n", " ")
    return parse_polynomial(text, ring)


def evaluate_certificate(P: Polynomial, xi: XiPoint):
    vals = {f"x{i + 1}": xi.coords[i] for i in range(len(xi.coords))}
    return P.eval_all(vals)


# ---------------------------------------------------------------------------
# Randomized orbit sampling
# ---------------------------------------------------------------------------


def random_projective_map(rng: random.Random, box: int = 9) -> ProjectiveMap:
    while True:
        rows = [[rng.randint(-box, box) for _ in range(3)] for _ in range(3)]
        pm = ProjectiveMap(rows)
        if pm.det() != 0:
            return pm


def random_nonzero_rational(rng: random.Random, height: int = 9) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-height, height)
    den = rng.randint(1, height)
    return Fraction(num, den)


def orbit_sample(d: int, lam, rng: random.Random) -> XiPoint:
    F = _f0(d, lam)
    phi = random_projective_map(rng)
    return to_xi(F.pullback(phi))


def verify_certificate(name: str, lam, samples: int, seed: int, lambdas=None) -> dict:
    """Evaluate a closed-orbit certificate on random orbit samples (exact zeros)."""
    P = load_certificate(name)
    d = CERTIFICATE_DEGREES[name]
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    rng = random.Random(seed)
    lam_list = [Fraction(v) for v in lambdas] if lambdas else [lam]
    failures = []
    checked = 0
    for lv in lam_list:
        for _ in range(samples):
            phi = random_projective_map(rng)
            xi = to_xi(_f0(d, lv).pullback(phi))
            val = evaluate_certificate(P, xi)
            checked += 1
            if val != 0:
                failures.append({"lambda": lv, "map": phi.rows, "value": val})
    f2_val = evaluate_certificate(P, to_xi(_f2(d)))
    return {
        "name": name,
        "degree": d,
        "samples": checked,
        "seed": seed,
        "lambdas": lam_list,
        "all_zero": not failures,
        "failures": failures,
        "f2_value": f2_val,
        "f2_nonzero": f2_val != 0,
    }


def verify_certificate_lambda_symbolic(name: str, samples: int, seed: int) -> dict:
    """Check vanishing identically in lambda along random numeric maps."""
    P = load_certificate(name)
    d = CERTIFICATE_DEGREES[name]
    rng = random.Random(seed)
    ring = PolyRing(QQ, PROJ_VARS + ("lam",))
    x, y, z, lam = (ring.var(v) for v in ring.vars)
    a = -lam * y * z**d
    b = z * (x * z ** (d - 1) + y**d)
    c = y * ((lam - 1) * x * z ** (d - 1) - y**d)
    F = Foliation(a, b, c)
    failures = []
    for _ in range(samples):
        phi = random_projective_map(rng)
        a2, b2, c2 = F.pullback_raw(phi)
        G = Foliation(a2, b2, c2, _skip_checks=True)
        A, B, C = G.abc_components()
        by_name = {"A": A, "B": B, "C": C}
        imgs = {}
        lring = PolyRing(QQ, ("lam",))
        for i, (nm, mono) in enumerate(xi_layout(d)):
            acc = {}
            for ee, cc in by_name[nm].terms.items():
                if ee[:3] == mono:
                    acc[(ee[3],)] = cc
            imgs[f"x{i + 1}"] = Polynomial(lring, acc)
        val = P.compose(imgs, lring)
        if not val.is_zero():
            failures.append({"map": phi.rows, "value": val.to_string()})
    return {"name": name, "samples": samples, "seed": seed, "all_zero": not failures, "failures": failures}


def verify_certificate_fully_symbolic(name: str) -> dict:
    """Vanishing with all nine map entries and lambda symbolic (expensive)."""
    P = load_certificate(name)
    d = CERTIFICATE_DEGREES[name]
    params = tuple(f"a{i}" for i in range(1, 10)) + ("lam",)
    ring = PolyRing(QQ, PROJ_VARS + params)
    x, y, z = (ring.var(v) for v in PROJ_VARS)
    lam = ring.var("lam")
    a = -lam * y * z**d
    b = z * (x * z ** (d - 1) + y**d)
    c = y * ((lam - 1) * x * z ** (d - 1) - y**d)
    F = Foliation(a, b, c, _skip_checks=True)
    pring = PolyRing(QQ, params)
    rows = [[pring.var(f"a{3 * i + j + 1}") for j in range(3)] for i in range(3)]
    phi = ProjectiveMap(rows, pring)
    a2, b2, c2 = F.pullback_raw(phi)
    G = Foliation(a2, b2, c2, _skip_checks=True)
    A, B, C = G.abc_components()
    by_name = {"A": A, "B": B, "C": C}
    imgs = {}
    for i, (nm, mono) in enumerate(xi_layout(d)):
        acc = {}
        for ee, cc in by_name[nm].terms.items():
            if ee[:3] == mono:
                acc[ee[3:]] = cc
        imgs[f"x{i + 1}"] = Polynomial(pring, acc)
    val = P.compose(imgs, pring)
    return {"name": name, "identically_zero": val.is_zero()}


# ---------------------------------------------------------------------------
# Fitting the degree-3 certificate ansatz for d >= 6
# ---------------------------------------------------------------------------


def qd_ansatz_monomials(d: int) -> list:
    """[(label, (i, j, k))]: cubic monomials x_i x_j x_k carrying one unknown each."""
    if d < 6:
        raise ValueError("the cubic ansatz is for degree >= 6 (bundled certificates cover 3..5)")
    N = xi_dim(d)
    mons = []
    cA = d * d + 3 * d + 3  # index of the C-coefficient on x^d
    cB = d * d + 3 * d + 4

    def crev(c):  # column c of the reversed C-vector, 1-based
        return N + 1 - c

    for i in range(1, d):
        mons.append((f"alpha{i}", (cA, 2 * d + 2 * i + 1, N - 1 - i)))
    for i in range(0, 5):
        mons.append((f"beta{i}", (cA, 2 * d + 2 * i + 4, N - 1 - i)))
    for r in range(1, d + 2):
        if r % 2 == 1:
            k = (r + 1) // 2
            for c in range(2 * k + 1, d + 2):
                mons.append((f"a{r}_{c}", (r, 2 * (c - k) - 3, crev(c))))
                mons.append((f"b{r}_{c}", (r, 2 * (c - k), crev(c))))
        else:
            k = r // 2
            if 2 * k - 1 <= d + 1:
                mons.append((f"b{r}_{2 * k - 1}", (r, 2 * k, crev(2 * k - 1))))
            for c in range(2 * k, d + 2):
                mons.append((f"a{r}_{c}", (r, 2 * (c - k) - 1, crev(c))))
                mons.append((f"b{r}_{c}", (r, 2 * (c - k) + 2, crev(c))))
    mons.append(("delta0", (cB, 2 * d + 4, N - 2)))
    mons.append(("delta1", (cB, 2 * d + 6, N - 3)))
    for i in range(1, d - 2):
        mons.append((f"gamma{i}", (cB, 2 * d + 2 * i + 1, N - 2 - i)))
    for label, (i, j, k) in mons:
        if not (1 <= i <= N and 1 <= j <= N and 1 <= k <= N):
            raise AssertionError(f"ansatz index out of range for {label}: {(i, j, k)}")
    return mons


def fit_qd(d: int, seed: int, train: int = None, holdout: int = 200, budget_rounds: int = 4) -> dict:
    """Fit a degree-3 certificate vanishing on orbit samples, nonzero at the split model.

    The fitted coefficients are this tool's own output, validated on held-out
    samples; they certify nothing beyond the samples tested.
    """
    mons = qd_ansatz_monomials(d)
    n_unknowns = len(mons)
    rng = random.Random(seed)
    n_train = train or (n_unknowns + 24)
    rows = []

    def sample_row():
        lam = random_nonzero_rational(rng)
        xi = orbit_sample(d, lam, rng)
        return [xi.coords[i - 1] * xi.coords[j - 1] * xi.coords[k - 1] for _, (i, j, k) in mons]

    report = {"degree": d, "seed": seed, "unknowns": n_unknowns, "rounds": []}
    for round_no in range(budget_rounds):
        while len(rows) < n_train:
            rows.append(sample_row())
        basis = nullspace(rows, ncols=n_unknowns)
        b21_idx = next(i for i, (label, _) in enumerate(mons) if label == "b2_1")
        candidates = [v for v in basis if v[b21_idx]]
        report["rounds"].append({"train": len(rows), "nullity": len(basis), "with_b21": len(candidates)})
        if not candidates:
            n_train += n_unknowns // 2
            continue
        coeffs = candidates[0]
        ring = certificate_ring(d)
        terms = {}
        for cval, (_, (i, j, k)) in zip(coeffs, mons):
            if not cval:
                continue
            e = [0] * len(ring.vars)
            for idx in (i, j, k):
                e[idx - 1] += 1
            key = tuple(e)
            terms[key] = terms.get(key, 0) + cval
        Q = ring.poly(terms)
        ok = True
        for _ in range(holdout):
            lam = random_nonzero_rational(rng)
            xi = orbit_sample(d, lam, rng)
            if evaluate_certificate(Q, xi) != 0:
                ok = False
                break
        f2_val = evaluate_certificate(Q, to_xi(_f2(d)))
        if ok and f2_val != 0:
            report.update(
                {
                    "feasible": True,
                    "certificate": Q,
                    "coefficients": {label: c for (label, _), c in zip(mons, coeffs) if c},
                    "b21": coeffs[b21_idx],
                    "f2_value": f2_val,
                    "holdout": holdout,
                }
            )
            return report
        n_train += n_unknowns // 2
    report["feasible"] = False
    report["detail"] = "no certificate with b2_1 != 0 survived validation within the budget (not a refutation)"
    return report


# ---------------------------------------------------------------------------
# Closure verdicts for the dimension-7 family
# ---------------------------------------------------------------------------


def f0_f1_conjugation(d: int) -> ProjectiveMap:
    """An explicit linear map carrying the lambda = 1 member onto the convex model."""
    F = _f0(d, 1)
    target = _f1(d)
    perms = [
        ((0, 1, 2)),
        ((0, 2, 1)),
        ((1, 0, 2)),
        ((1, 2, 0)),
        ((2, 0, 1)),
        ((2, 1, 0)),
    ]
    for perm in perms:
        for s1 in (1, -1):
            for s2 in (1, -1):
                for s3 in (1, -1):
                    rows = [[0] * 3 for _ in range(3)]
                    signs = (s1, s2, s3)
                    for i in range(3):
                        rows[i][perm[i]] = signs[i]
                    pm = ProjectiveMap(rows)
                    try:
                        if F.pullback(pm).same_class(target):
                            return pm
                    except Exception:
                        continue
    raise ArithmeticError("no signed permutation conjugates the lambda = 1 member onto the convex model")


def closure_conclusion(lam, d: int, seed: int = 0, samples: int = 40) -> dict:
    """Closed-orbit verdict for the family x dy - lambda y dx + y^d dy."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    if lam == 1:
        phi = f0_f1_conjugation(d)
        return {
            "verdict": "closed",
            "reason": "conjugate-to-f1",
            "detail": "the lambda = 1 member is linearly conjugate to the convex minimal model",
            "conjugation": phi.rows,
            "empirical": False,
        }
    F = _f0(d, lam)
    if d >= 3 and lam == Fraction(-1, d - 1):
        _, tr = decompose_divisor(F)
        if tr.degree < d - 1:
            return {
                "verdict": "closed",
                "reason": "itr-degree",
                "detail": f"deg I_tr = {tr.degree} < d-1 blocks any degeneration onto the non-convex model",
                "empirical": False,
            }
    if d == 2:
        res = certify_f2_degeneration(F)
        if isinstance(res, DegenerationCertificate):
            return {
                "verdict": "not-closed",
                "reason": "degenerates-onto-f2",
                "detail": "an explicit family reaches the non-convex model in the orbit closure",
                "empirical": False,
            }
        return {"verdict": "inconclusive", "reason": "no-certificate", "detail": res.detail, "empirical": True}
    if d in (3, 4, 5):
        name = f"p{d}"
        rep = verify_certificate(name, lam, samples, seed)
        if rep["all_zero"] and rep["f2_nonzero"]:
            return {
                "verdict": "closed",
                "reason": f"certificate-{name}",
                "detail": "the verbatim certificate vanishes on orbit samples and not at the non-convex model",
                "empirical": False,
                "report": rep,
            }
        return {
            "verdict": "falsified-certificate",
            "reason": f"certificate-{name}",
            "detail": "a sample evaluated to a nonzero value",
            "empirical": False,
            "report": rep,
        }
    rep = fit_qd(d, seed)
    if rep.get("feasible"):
        return {
            "verdict": "closed",
            "reason": "fitted-qd",
            "detail": "a fitted cubic certificate separates the orbit closure from the non-convex model",
            "empirical": True,
            "report": {k: v for k, v in rep.items() if k != "certificate"},
        }
    return {"verdict": "inconclusive", "reason": "fit-infeasible", "detail": rep.get("detail", ""), "empirical": True}

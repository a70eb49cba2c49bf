"""Command handlers shared by the HTTP endpoints (the CLI reaches them over ASGI)."""

from __future__ import annotations

from .. import corpus as corpus_mod
from ..certificates import (
    closure_conclusion,
    fit_qd,
    to_xi,
    verify_certificate,
    verify_certificate_fully_symbolic,
    verify_certificate_lambda_symbolic,
)
from ..degeneration import (
    DegenerationCertificate,
    certify_f1_degeneration,
    certify_f2_degeneration,
    certify_h12_degeneration,
)
from ..foliation import Foliation
from ..inflection import decompose_divisor, inflection_divisor, sigma2_membership, u2_membership
from ..local import classify, singular_points, u1_membership
from ..parser import ParseError, parse_form, print_form, print_triple
from ..reports import describe_foliation, encode
from ..rings import rat_from_string
from ..symmetry import symmetry_space
from .models import FoliationSpec


class UsageError(ValueError):
    pass


def build_foliation(spec: FoliationSpec) -> tuple:
    """(Foliation, echo dict) from a request spec."""
    if spec.form and spec.corpus:
        raise UsageError("give either a form or a corpus family, not both")
    if spec.form:
        try:
            F = parse_form(spec.form)
        except ParseError as e:
            raise UsageError(str(e))
        return F, {"form": spec.form}
    if spec.corpus:
        params = {}
        if spec.d is not None:
            params["d"] = spec.d
        if spec.lam is not None:
            params["lam"] = rat_from_string(spec.lam)
        if spec.gamma is not None:
            params["gamma"] = rat_from_string(spec.gamma)
        if spec.p is not None:
            params["p"] = [rat_from_string(v) for v in spec.p]
        try:
            F = corpus_mod.build(spec.corpus, **params)
        except (KeyError, ValueError) as e:
            raise UsageError(str(e))
        echo = {"corpus": spec.corpus}
        echo.update({k: str(v) if not isinstance(v, list) else [str(x) for x in v] for k, v in params.items()})
        return F, echo
    raise UsageError("a foliation is required: provide form or corpus")


def op_analyze(spec: FoliationSpec) -> tuple:
    F, echo = build_foliation(spec)
    loc = singular_points(F)
    profiles = []
    for pt in loc.points:
        profiles.extend(classify(F, pt))
    div = inflection_divisor(F)
    inv, tr = decompose_divisor(F, div)
    sym = symmetry_space(F)
    result = {
        "foliation": describe_foliation(F),
        "singular_locus": loc,
        "profiles": profiles,
        "inflection": {"divisor": div, "invariant": inv, "transverse": tr, "convex": tr.degree == 0},
        "isotropy": {"dim_iso": sym["dim_iso"], "dim_orbit": sym["dim_orbit"]},
    }
    return {"inputs": echo, "result": encode(result)}, 0


def op_invariants(spec: FoliationSpec) -> tuple:
    F, echo = build_foliation(spec)
    loc = singular_points(F)
    profiles = []
    for pt in loc.points:
        profiles.extend(classify(F, pt))
    u1 = u1_membership(F)
    result = {
        "foliation": describe_foliation(F),
        "singular_locus": loc,
        "profiles": profiles,
        "u1": {"member": u1["member"], "conditional": u1["conditional"], "reasons": u1["reasons"]},
    }
    code = 2 if u1["conditional"] else 0
    return {"inputs": echo, "result": encode(result)}, code


def op_inflection(spec: FoliationSpec) -> tuple:
    F, echo = build_foliation(spec)
    div = inflection_divisor(F)
    inv, tr = decompose_divisor(F, div)
    u2 = u2_membership(F)
    result = {
        "foliation": describe_foliation(F),
        "divisor": div,
        "invariant": inv,
        "transverse": tr,
        "convex": tr.degree == 0,
        "u2": {"member": u2["member"], "transverse": u2["transverse"], "reduced": u2["reduced"]},
    }
    return {"inputs": echo, "result": encode(result)}, 0


def op_convex(spec: FoliationSpec) -> tuple:
    F, echo = build_foliation(spec)
    _, tr = decompose_divisor(F)
    return {"inputs": echo, "result": {"convex": tr.degree == 0, "transverse_degree": tr.degree}}, 0


def op_iso_dim(spec: FoliationSpec) -> tuple:
    F, echo = build_foliation(spec)
    sym = symmetry_space(F)
    result = {
        "dim_iso": sym["dim_iso"],
        "dim_orbit": sym["dim_orbit"],
        "kernel": [[str(v) for v in vec] for vec in sym["kernel_coeffs"]],
    }
    return {"inputs": echo, "result": result}, 0


def op_sigma2(spec: FoliationSpec) -> tuple:
    F, echo = build_foliation(spec)
    res = sigma2_membership(F)
    code = 0 if res["member"] or res["certificate"] == "no-candidates" else 2
    return {"inputs": echo, "result": encode(res)}, code


def op_degenerate(spec: FoliationSpec, target: str) -> tuple:
    F, echo = build_foliation(spec)
    fn = {"f1": certify_f1_degeneration, "f2": certify_f2_degeneration, "h12": certify_h12_degeneration}[target]
    res = fn(F)
    echo = dict(echo)
    echo["target"] = target
    if isinstance(res, DegenerationCertificate):
        if not res.replay():
            return {"inputs": echo, "result": encode(res)}, 1
        return {"inputs": echo, "result": encode(res)}, 0
    code = 0 if res.proof else 2
    return {"inputs": echo, "result": encode(res)}, code


def op_xi(spec: FoliationSpec) -> tuple:
    F, echo = build_foliation(spec)
    xi = to_xi(F)
    return {
        "inputs": echo,
        "result": {"degree": xi.degree, "length": len(xi.coords), "coords": [str(c) for c in xi.coords]},
    }, 0


def op_certify(poly: str, lam: str, samples: int, seed: int, mode: str) -> tuple:
    inputs = {"poly": poly, "lambda": lam, "samples": samples, "seed": seed, "mode": mode}
    if mode == "sample":
        rep = verify_certificate(poly, rat_from_string(lam), samples, seed)
        code = 0 if rep["all_zero"] and rep["f2_nonzero"] else 1
        return {"inputs": inputs, "result": encode(rep)}, code
    if mode == "lambda-symbolic":
        rep = verify_certificate_lambda_symbolic(poly, samples, seed)
        return {"inputs": inputs, "result": encode(rep)}, 0 if rep["all_zero"] else 1
    rep = verify_certificate_fully_symbolic(poly)
    return {"inputs": inputs, "result": encode(rep)}, 0 if rep["identically_zero"] else 1


def op_fit_qd(degree: int, seed: int, train, holdout: int) -> tuple:
    inputs = {"degree": degree, "seed": seed, "train": train, "holdout": holdout}
    rep = fit_qd(degree, seed, train=train, holdout=holdout)
    result = dict(rep)
    if "certificate" in result:
        result["certificate"] = result["certificate"].to_string()
        result["coefficients"] = {k: str(v) for k, v in result["coefficients"].items()}
        result["b21"] = str(result["b21"])
        result["f2_value"] = str(result["f2_value"])
    code = 0 if rep.get("feasible") else 2
    return {"inputs": inputs, "result": result}, code


def op_closure(d: int, lam: str, seed: int, samples: int) -> tuple:
    inputs = {"d": d, "lambda": lam, "seed": seed, "samples": samples}
    rep = closure_conclusion(rat_from_string(lam), d, seed=seed, samples=samples)
    code = {"closed": 0, "not-closed": 0, "falsified-certificate": 1, "inconclusive": 2}[rep["verdict"]]
    return {"inputs": inputs, "result": encode(rep)}, code


def op_corpus(name: str, **params) -> tuple:
    spec = FoliationSpec(corpus=name, **params)
    F, echo = build_foliation(spec)
    result = {
        "foliation": describe_foliation(F),
        "form": print_form(F, "z"),
        "triple": print_triple(F),
        "families": sorted(corpus_mod.CORPUS),
    }
    return {"inputs": echo, "result": result}, 0

"""Deterministic structured reports: everything exact, rationals as 'p/q' strings."""

from __future__ import annotations

import json
from fractions import Fraction

from .degeneration import AbsenceReport, DegenerationCertificate
from .foliation import Foliation, ProjectiveMap
from .inflection import Divisor
from .local import LocalProfile, ProjectivePoint, SingularLocus
from .polynomials import Polynomial
from .rings import QuotientDomain, rat_to_string, upoly_to_string


def encode(value):
    """Recursively render exact values as strings/lists/dicts (no floats anywhere)."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return rat_to_string(value)
    if isinstance(value, Polynomial):
        return value.to_string()
    if isinstance(value, ProjectivePoint):
        return describe_point(value)
    if isinstance(value, Divisor):
        return describe_divisor(value)
    if isinstance(value, SingularLocus):
        return describe_locus(value)
    if isinstance(value, LocalProfile):
        return describe_profile(value)
    if isinstance(value, DegenerationCertificate):
        return describe_degeneration(value)
    if isinstance(value, AbsenceReport):
        return describe_absence(value)
    if isinstance(value, ProjectiveMap):
        return describe_map(value)
    if isinstance(value, QuotientDomain):
        return upoly_to_string(list(value.modulus), value.var)
    if isinstance(value, Foliation):
        return describe_foliation(value)
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__}")


def describe_foliation(F: Foliation) -> dict:
    from .parser import print_form, print_triple

    return {
        "degree": F.degree,
        "homogeneous": print_triple(F),
        "affine_chart_z": print_form(F, "z"),
    }


def describe_point(pt: ProjectivePoint) -> dict:
    out = {"coords": list(pt.to_strings()), "weight": pt.weight}
    if not pt.is_rational:
        out["modulus"] = upoly_to_string(list(pt.domain.modulus), pt.domain.var)
    return out


def describe_locus(loc: SingularLocus) -> dict:
    return {
        "points": [describe_point(p) for p in loc.points],
        "complete": loc.complete,
        "milnor_sum": loc.milnor_sum,
        "expected_sum": loc.expected_sum,
        "notes": list(loc.notes),
    }


def describe_profile(prof: LocalProfile) -> dict:
    bb = prof.bb
    if bb is not None and not isinstance(bb, (int, Fraction)):
        dom = prof.branch if prof.branch is not None else prof.point.domain
        bb = dom.to_string(bb)
    elif isinstance(bb, (int, Fraction)):
        bb = rat_to_string(bb)
    out = {
        "point": describe_point(prof.point),
        "weight": prof.weight,
        "nu": prof.nu,
        "tau": prof.tau,
        "mu_is_one": prof.mu_is_one,
        "mu": prof.mu,
        "baum_bott": bb,
        "kappa": prof.kappa,
        "lambda_lines": [[rat_to_string(Fraction(a)), rat_to_string(Fraction(b))] for a, b in prof.lambda_rational],
        "lambda_size": prof.lambda_size,
        "tag": prof.tag,
        "witness_line": list(prof.witness) if prof.witness else None,
    }
    if prof.branch is not None:
        out["branch_modulus"] = upoly_to_string(list(prof.branch.modulus), prof.branch.var)
    return out


def describe_divisor(div: Divisor) -> dict:
    return {
        "factors": [[f.to_string(), m] for f, m in div.factors],
        "degree": div.degree,
        "reduced": div.is_reduced(),
        "notes": list(div.notes),
    }


def describe_map(pm: ProjectiveMap) -> list:
    rows = []
    for r in pm.rows:
        rows.append([v.to_string() if isinstance(v, Polynomial) else rat_to_string(Fraction(v)) for v in r])
    return rows


def describe_degeneration(cert: DegenerationCertificate) -> dict:
    steps = []
    for step in cert.steps:
        if step[0] == "map":
            steps.append({"kind": "map", "matrix": describe_map(step[1])})
        else:
            steps.append({"kind": "limit", "matrix": describe_map(step[1]), "scaling_power": step[2]})
    return {
        "status": "certificate",
        "target": cert.target_tag,
        "steps": steps,
        "notes": list(cert.notes),
        "chained": {k: describe_degeneration(v) for k, v in cert.chained.items()},
        "replays": cert.replay(),
    }


def describe_absence(rep: AbsenceReport) -> dict:
    return {
        "status": "absence",
        "target": rep.target_tag,
        "reason": rep.reason,
        "detail": rep.detail,
        "proof": rep.proof,
    }


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)

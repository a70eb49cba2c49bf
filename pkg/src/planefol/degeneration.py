"""Epsilon-family limits and constructive degeneration certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .corpus import f1 as _f1, f2 as _f2, h12 as _h12
from .foliation import Foliation, PROJ_VARS, ProjectiveMap
from .inflection import decompose_divisor, sigma2_membership
from .local import ProjectivePoint, milnor_is_one, singular_points, quasi_radial_maximal
from .polynomials import PolyRing, Polynomial, exact_div, poly_gcd, poly_gcd_many
from .rings import QQ


@dataclass
class LimitDiagnosis:
    """A family whose epsilon -> 0 limit leaves F(d) (common factor extracted)."""

    common_factor: Polynomial

    def __repr__(self):
        return f"degenerate limit; common factor {self.common_factor.to_string()}"


def eps_map(entries) -> ProjectiveMap:
    """Projective map whose entries live in Q[eps]."""
    ring = PolyRing(QQ, ("eps",))
    rows = []
    for r in entries:
        rows.append([v if isinstance(v, Polynomial) else ring.const(v) for v in r])
    return ProjectiveMap(rows, ring)


def eps_power_diag(*exps) -> ProjectiveMap:
    ring = PolyRing(QQ, ("eps",))
    e = ring.var("eps")
    rows = [[ring.zero()] * 3 for _ in range(3)]
    for i, k in enumerate(exps):
        rows[i][i] = e**k if k else ring.one()
    return ProjectiveMap(rows, ring)


def limit_family(F: Foliation, phi: ProjectiveMap):
    """((limit, k) | (LimitDiagnosis, k)) for the scaled family eps^-k phi_eps^* omega."""
    a, b, c = F.pullback_raw(phi)
    ring = a.ring
    if "eps" not in ring.index:
        return F.pullback(phi), 0
    ie = ring.index["eps"]
    k = min(e[ie] for p in (a, b, c) if not p.is_zero() for e in p.terms)

    def scaled_limit(p):
        return Polynomial(ring, {e[:ie] + (0,) + e[ie + 1 :]: c0 for e, c0 in p.terms.items() if e[ie] == k})

    la, lb, lc = (scaled_limit(p) for p in (a, b, c))
    base = PolyRing(QQ, PROJ_VARS)
    la, lb, lc = (p.map_into(base) for p in (la, lb, lc))
    g = poly_gcd_many([p for p in (la, lb, lc) if not p.is_zero()])
    if not g.is_constant():
        return LimitDiagnosis(common_factor=g.normalized()), k
    return Foliation(la, lb, lc), k


@dataclass
class DegenerationCertificate:
    source: Foliation
    target_tag: str  # "f1" | "f2" | "h12"
    target: Foliation
    steps: list  # ("map", ProjectiveMap) and ("limit", ProjectiveMap, expected_k)
    chained: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def replay(self) -> bool:
        """Re-run the recorded chain and compare with the target's canonical form."""
        cur = self.source
        for step in self.steps:
            if step[0] == "map":
                cur = cur.pullback(step[1])
            elif step[0] == "limit":
                cur, k = limit_family(cur, step[1])
                if isinstance(cur, LimitDiagnosis) or k != step[2]:
                    return False
            else:
                raise ValueError(f"unknown step {step[0]!r}")
        ok = cur.same_class(self.target)
        for sub in self.chained.values():
            ok = ok and sub.replay()
        return ok


@dataclass
class AbsenceReport:
    target_tag: str
    reason: str  # machine tag
    detail: str
    proof: bool  # True when the reason is a genuine obstruction, not a failed search


def _normalization_to_point_and_line(pt: ProjectivePoint, line_ab) -> ProjectiveMap:
    """Map carrying ([0:0:1], {x=0}) onto (pt, its line a(u-u0)+b(v-v0)=0)."""
    chart = pt.chart()
    u0, v0 = pt.affine_coords()
    a, b = Fraction(line_ab[0]), Fraction(line_ab[1])
    names = list(PROJ_VARS)
    k = names.index(chart)
    iu, iv = [names.index(w) for w in _chart_pair(chart)]
    s = [Fraction(0)] * 3
    s[k] = Fraction(1)
    s[iu] = Fraction(u0)
    s[iv] = Fraction(v0)
    p2 = list(s)
    p2[iu] += b
    p2[iv] += -a
    for cand in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)):
        # need a point off the line for the first column
        val = a * (Fraction(cand[iu]) - u0 * Fraction(cand[k])) + b * (Fraction(cand[iv]) - v0 * Fraction(cand[k]))
        if val != 0:
            p1 = [Fraction(v) for v in cand]
            break
    cols = [p1, p2, s]
    rows = [[cols[j][i] for j in range(3)] for i in range(3)]
    phi = ProjectiveMap(rows)
    if phi.det() == 0:
        raise ArithmeticError("normalization map is singular")
    return phi


def _chart_pair(chart: str):
    from .foliation import CHART_COORDS

    return CHART_COORDS[chart]


def _affine_parts(F: Foliation):
    """(A_full, B_full, parts_by_degree) in the chart z=1."""
    w = F.affine_form("z")
    A, B = w.A, w.B

    def parts(p):
        out = {}
        for e, c in p.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {k: Polynomial(p.ring, t) for k, t in out.items()}

    return A, B, parts(A), parts(B)


def _coeff_of(p: Polynomial, var: str, power: int):
    e = [0] * len(p.ring.vars)
    e[p.ring.index[var]] = power
    return p.coefficient(tuple(e))


def f1_final_map(alpha, gamma) -> ProjectiveMap:
    return ProjectiveMap([[alpha, 0, -gamma], [alpha, 0, 0], [0, alpha, 0]])


def f2_final_map(alpha, beta) -> ProjectiveMap:
    return ProjectiveMap([[0, 0, -beta], [0, alpha, 0], [alpha, 0, 0]])


def certify_f1_degeneration(F: Foliation):
    """Certificate that F degenerates onto the convex minimal model, or a report."""
    d = F.degree
    target = _f1(d)
    if F.same_class(target):
        return AbsenceReport("f1", "same-orbit", "the foliation already lies on the target orbit", True)
    hits = quasi_radial_maximal(F)
    if hits:
        pt, line = hits[0]
        psi0 = _normalization_to_point_and_line(pt, line)
        G = F.pullback(psi0)
        A, B, _, bparts = _affine_parts(G)
        alpha = _coeff_of(B, "x", 1)
        B_top = bparts.get(d)
        gamma = _coeff_of(B_top, "y", d) if B_top is not None else 0
        if not alpha or not gamma:
            return AbsenceReport("f1", "normalization-failed", "normalized 1-form lacks the expected shape", False)
        phi = eps_power_diag(d, 1, 0)
        lim, k = limit_family(G, phi)
        if isinstance(lim, LimitDiagnosis):
            return AbsenceReport("f1", "limit-degenerate", repr(lim), False)
        theta = Foliation.from_affine(
            F.ring.var("y").scale(-Fraction(alpha)),
            F.ring.var("x").scale(Fraction(alpha)) + (F.ring.var("y") ** d).scale(Fraction(gamma)),
            "z",
        )
        if not lim.same_class(theta):
            return AbsenceReport("f1", "limit-mismatch", "epsilon limit missed the model form", False)
        final = f1_final_map(alpha, gamma)
        cert = DegenerationCertificate(
            source=F,
            target_tag="f1",
            target=target,
            steps=[("map", psi0), ("limit", phi, k), ("map", final)],
            notes=[f"quasi-radial point {pt!r} with witness line {line!r}"],
        )
        if not cert.replay():
            raise ArithmeticError("f1 certificate failed to replay")
        return cert
    # necessary condition: a non-degenerate singularity with Baum-Bott index 4
    has_bb4 = False
    for pt in singular_points(F).points:
        for bdom, mu1 in milnor_is_one(F, pt):
            if not mu1:
                continue
            sub_pt = pt if bdom is None or bdom == pt.domain else pt.project(bdom)
            try:
                from .local import bb_equals

                if bb_equals(F, sub_pt, 4):
                    has_bb4 = True
            except ArithmeticError:
                pass
    if not has_bb4:
        return AbsenceReport(
            "f1",
            "bb-obstruction",
            "no non-degenerate singularity has Baum-Bott index 4, which degeneration requires",
            True,
        )
    bespoke = _radial_perturbation_shape(F)
    if bespoke is not None:
        return bespoke
    return AbsenceReport(
        "f1",
        "no-qrad-witness",
        "no rational quasi-radial singularity of maximal order was found (semi-decision)",
        False,
    )


def _radial_perturbation_shape(F: Foliation):
    """Bespoke family for forms x dy - y dx + P(y) dy (no maximal quasi-radial point)."""
    d = F.degree
    A, B, aparts, bparts = _affine_parts(F)
    x = F.ring.var("x")
    y = F.ring.var("y")
    # expect A = -c*y, B = c*x + P(y), P(0) = 0
    if A.total_degree() != 1 or _coeff_of(A, "x", 1) or not _coeff_of(A, "y", 1):
        return None
    c = -Fraction(_coeff_of(A, "y", 1))
    P = B - x.scale(c)
    if P.is_zero() or P.degree_in("x") > 0 or P.total_degree() != d:
        return None
    if _coeff_of(P, "y", 0):
        return None
    lead = Fraction(_coeff_of(P, "y", d)) / c
    phi = eps_map(
        [
            [PolyRing(QQ, ("eps",)).const(lead), 0, 0],
            [0, PolyRing(QQ, ("eps",)).var("eps") ** (d - 1), 0],
            [0, 0, PolyRing(QQ, ("eps",)).var("eps") ** d],
        ]
    )
    lim, k = limit_family(F, phi)
    if isinstance(lim, LimitDiagnosis):
        return None
    theta = Foliation.from_affine(-y, x + y**d, "z")
    if not lim.same_class(theta):
        return None
    cert = DegenerationCertificate(
        source=F,
        target_tag="f1",
        target=_f1(d),
        steps=[("limit", phi, k), ("map", f1_final_map(1, 1))],
        notes=["matched the radial-perturbation normal form x dy - y dx + P(y) dy"],
    )
    if not cert.replay():
        raise ArithmeticError("bespoke f1 certificate failed to replay")
    return cert


def certify_f2_degeneration(F: Foliation):
    """Certificate that F degenerates onto the non-convex minimal model, or a report."""
    d = F.degree
    target = _f2(d)
    if F.same_class(target):
        return AbsenceReport("f2", "same-orbit", "the foliation already lies on the target orbit", True)
    _, tr = decompose_divisor(F)
    if tr.degree < d - 1:
        return AbsenceReport(
            "f2",
            "itr-obstruction",
            f"deg I_tr = {tr.degree} < d-1 = {d - 1}, which degeneration requires",
            True,
        )
    flex = sigma2_membership(F)
    pt = flex["witness"]
    if flex["member"] and pt is not None and pt.is_rational:
        from .inflection import flex_order

        tangent = flex_order(F, pt)["tangent"]
        psi0 = _normalization_to_point_and_line(pt, tangent)
        G = F.pullback(psi0)
        A, B, _, bparts = _affine_parts(G)
        alpha = A.coefficient(G.ring.zero_exp)
        B_top = bparts.get(d)
        beta = _coeff_of(B_top, "y", d) if B_top is not None else 0
        if not alpha or not beta:
            return AbsenceReport("f2", "normalization-failed", "normalized 1-form lacks the expected shape", False)
        phi = eps_power_diag(d + 1, 1, 0)
        lim, k = limit_family(G, phi)
        if isinstance(lim, LimitDiagnosis):
            return AbsenceReport("f2", "limit-degenerate", repr(lim), False)
        model = Foliation.from_affine(
            G.ring.const(Fraction(alpha)), (G.ring.var("y") ** d).scale(Fraction(beta)), "z"
        )
        if not lim.same_class(model):
            return AbsenceReport("f2", "limit-mismatch", "epsilon limit missed the model form", False)
        final = f2_final_map(alpha, beta)
        cert = DegenerationCertificate(
            source=F,
            target_tag="f2",
            target=target,
            steps=[("map", psi0), ("limit", phi, k), ("map", final)],
            notes=[f"maximal-order inflection point {pt!r}"],
        )
        if not cert.replay():
            raise ArithmeticError("f2 certificate failed to replay")
        return cert
    bespoke = _translation_perturbation_shape(F)
    if bespoke is not None:
        return bespoke
    return AbsenceReport(
        "f2",
        "no-flex-witness",
        "no rational inflection point of maximal order was found (semi-decision)",
        False,
    )


def _translation_perturbation_shape(F: Foliation):
    """Bespoke family for forms dx + P(y) dy, deg P = d."""
    d = F.degree
    A, B, _, _ = _affine_parts(F)
    if not A.is_constant():
        return None
    alpha = A.constant_value()
    if not alpha or B.degree_in("x") > 0 or B.total_degree() != d:
        return None
    lead = Fraction(_coeff_of(B, "y", d)) / Fraction(alpha)
    ring = PolyRing(QQ, ("eps",))
    phi = eps_map([[ring.const(lead), 0, 0], [0, ring.var("eps") ** d, 0], [0, 0, ring.var("eps") ** (d + 1)]])
    lim, k = limit_family(F, phi)
    if isinstance(lim, LimitDiagnosis):
        return None
    y = F.ring.var("y")
    model = Foliation.from_affine(F.ring.one(), y**d, "z")
    if not lim.same_class(model):
        return None
    cert = DegenerationCertificate(
        source=F,
        target_tag="f2",
        target=_f2(d),
        steps=[("limit", phi, k), ("map", f2_final_map(1, 1))],
        notes=["matched the translation-perturbation normal form dx + P(y) dy"],
    )
    if not cert.replay():
        raise ArithmeticError("bespoke f2 certificate failed to replay")
    return cert


def certify_h12_degeneration(F: Foliation):
    """Certificate that F lies in the explicit basin slice of the mixed model."""
    d = F.degree
    target = _h12(d)
    inv, _tr = decompose_divisor(F)
    lines = [f for f, _m in inv.factors if f.total_degree() == 1]
    if F.same_class(target):
        lines = lines or [F.ring.var("z")]
    if not lines:
        return AbsenceReport("h12", "no-invariant-line", "no rational invariant line exists", True)
    for line in lines:
        psi0 = _line_to_infinity(line, F.ring)
        G = F.pullback(psi0)
        match = _h12_normal_form(G)
        if match is None:
            continue
        psi1, lam = match
        G2 = G.pullback(psi1) if psi1 is not None else G
        phi = eps_power_diag(0, 0, 1)
        lim, k = limit_family(G2, phi)
        if isinstance(lim, LimitDiagnosis) or not lim.same_class(target):
            continue
        steps = [("map", psi0)]
        if psi1 is not None:
            steps.append(("map", psi1))
        steps.append(("limit", phi, k))
        cert = DegenerationCertificate(
            source=F,
            target_tag="h12",
            target=target,
            steps=steps,
            notes=[f"invariant line {line.to_string()} sent to infinity; top part = {lam} * model"],
        )
        sub1 = certify_f1_degeneration(target)
        sub2 = certify_f2_degeneration(target)
        if isinstance(sub1, DegenerationCertificate):
            cert.chained["f1"] = sub1
        if isinstance(sub2, DegenerationCertificate):
            cert.chained["f2"] = sub2
        if not cert.replay():
            raise ArithmeticError("h12 certificate failed to replay")
        return cert
    return AbsenceReport(
        "h12",
        "not-in-normal-form",
        "no invariant line produced the (x^d + y^d) dx + x^d dy top shape (searched over Q-line normalizations)",
        False,
    )


def _line_to_infinity(line: Polynomial, ring: PolyRing) -> ProjectiveMap:
    """Map sending {z=0} onto the given rational line."""
    coeffs = [Fraction(_coeff_of(line, v, 1)) for v in PROJ_VARS]
    basis = []
    for cand in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        val = sum(c * Fraction(w) for c, w in zip(coeffs, cand))
        basis.append((cand, val))
    on_line = []
    off_line = None
    for cand, val in basis:
        if val == 0:
            on_line.append(cand)
        elif off_line is None:
            off_line = cand
    idx = 0
    while len(on_line) < 2:
        # complete with combinations e_i - c e_j lying on the line
        for i in range(3):
            for j in range(3):
                if i == j:
                    continue
                ci, cj = coeffs[i], coeffs[j]
                if cj == 0:
                    continue
                cand = [Fraction(0)] * 3
                cand[i] = cj
                cand[j] = -ci
                if not any(tuple(cand) == tuple(map(Fraction, o)) for o in on_line):
                    on_line.append(tuple(cand))
                if len(on_line) >= 2:
                    break
            if len(on_line) >= 2:
                break
        idx += 1
        if idx > 3:
            raise ArithmeticError("could not build two points on the line")
    cols = [on_line[0], on_line[1], off_line]
    rows = [[Fraction(cols[j][i]) for j in range(3)] for i in range(3)]
    phi = ProjectiveMap(rows)
    if phi.det() == 0:
        # last resort: swap the two line points for independent ones
        raise ArithmeticError("line normalization is singular")
    return phi


def _dth_power_line(p: Polynomial, d: int):
    """If p = c * (linear in x, y)^d over Q, return (c, line); else None."""
    if p.is_zero() or p.total_degree() != d:
        return None
    dx = p.derivative("x")
    probe = dx if not dx.is_zero() else p.derivative("y")
    if probe.is_zero():
        return None
    g = poly_gcd(p, probe)
    if g.total_degree() != d - 1:
        return None
    line = exact_div(p, g)
    if line is None or line.total_degree() != 1:
        return None
    line = line.normalized()
    power = line**d
    e, c0 = power.lead()
    c = Fraction(p.terms.get(e, 0)) / Fraction(c0)
    if not c or not (p - power.scale(c)).is_zero():
        return None
    return c, line


def _top_parts(G: Foliation):
    d = G.degree
    A, B, aparts, bparts = _affine_parts(G)
    if max(A.total_degree(), B.total_degree()) > d:
        return None, None  # radial top part present (C_d != 0)
    return aparts.get(d), bparts.get(d)


def _h12_shape_literal(G: Foliation):
    """lambda with top part exactly lambda((x^d+y^d) dx + x^d dy), else None."""
    d = G.degree
    Ad, Bd = _top_parts(G)
    if Ad is None or Bd is None:
        return None
    x = G.ring.var("x")
    y = G.ring.var("y")
    lam = Fraction(_coeff_of(Bd, "x", d))
    if not lam:
        return None
    if not (Bd - (x**d).scale(lam)).is_zero():
        return None
    if not (Ad - (x**d + y**d).scale(lam)).is_zero():
        return None
    return lam


def _pencil_power_lines(Ad: Polynomial, Bd: Polynomial, d: int) -> list:
    """Rational lines m with m^d inside the pencil spanned by the two top forms."""
    ab = PolyRing(QQ, ("al", "be"))
    al, be = ab.var("al"), ab.var("be")
    cs = []
    for i in range(d + 1):
        ca = Fraction(_coeff_of_mono(Ad, d - i, i))
        cb = Fraction(_coeff_of_mono(Bd, d - i, i))
        cs.append(al.scale(ca) + be.scale(cb))
    us = [cs[i].scale(d - i) for i in range(d)]
    vs = [cs[i + 1].scale(i + 1) for i in range(d)]
    minors = []
    for i in range(d):
        for j in range(i + 1, d):
            m = us[i] * vs[j] - us[j] * vs[i]
            if not m.is_zero():
                minors.append(m)
    if not minors:
        return []
    g = minors[0]
    for m in minors[1:]:
        g = poly_gcd(g, m)
        if g.is_constant():
            return []
    from .polynomials import binary_linear_factors

    lines = []
    factors, _cof = binary_linear_factors(g, "al", "be")
    for line, _mult in factors:
        p = Fraction(_coeff_of(line, "al", 1))
        q = Fraction(_coeff_of(line, "be", 1))
        a0, b0 = q, -p  # root of the factor
        f = Ad.scale(a0) + Bd.scale(b0)
        if f.is_zero():
            continue
        got = _dth_power_line(f, d)
        if got is not None:
            lines.append(got[1])
    # dedupe
    out = []
    for m in lines:
        if not any((m - m2).is_zero() for m2 in out):
            out.append(m)
    return out


def _coeff_of_mono(p: Polynomial, ex: int, ey: int):
    e = [0] * len(p.ring.vars)
    e[p.ring.index["x"]] = ex
    e[p.ring.index["y"]] = ey
    return p.coefficient(tuple(e))


def _h12_normal_form(G: Foliation):
    """Search a GL2(Q) change making the top affine part lambda((x^d+y^d) dx + x^d dy).

    Returns (psi or None, lambda) on success, where psi is the rational basis
    change to apply (None when the shape is already literal), or None overall.
    """
    d = G.degree
    lam = _h12_shape_literal(G)
    if lam is not None:
        return None, lam
    Ad, Bd = _top_parts(G)
    if Ad is None or Bd is None:
        return None
    lines = _pencil_power_lines(Ad, Bd, d)
    if len(lines) < 2:
        return None
    for m1 in lines:
        for m2 in lines:
            if (m1 - m2).is_zero():
                continue
            sol = _h12_basis_from_powers(G, Ad, Bd, m1, m2, d)
            if sol is not None:
                return sol
    return None


def _h12_basis_from_powers(G, Ad, Bd, m1, m2, d):
    """Try coordinates with u^d, v^d the given pencil powers; verify literally."""
    p1 = m1**d
    p2 = m2**d
    # express Ad = a1 p1 + a2 p2, Bd = b1 p1 + b2 p2
    coords = sorted(set(p1.terms) | set(p2.terms) | set(Ad.terms) | set(Bd.terms))
    rows = [[Fraction(p1.terms.get(e, 0)), Fraction(p2.terms.get(e, 0))] for e in coords]
    target_a = [Fraction(Ad.terms.get(e, 0)) for e in coords]
    target_b = [Fraction(Bd.terms.get(e, 0)) for e in coords]
    sol_a = _solve_2col(rows, target_a)
    sol_b = _solve_2col(rows, target_b)
    if sol_a is None or sol_b is None:
        return None
    a1, a2 = sol_a
    b1, b2 = sol_b
    p = Fraction(_coeff_of(m1, "x", 1))
    q = Fraction(_coeff_of(m1, "y", 1))
    r = Fraction(_coeff_of(m2, "x", 1))
    s = Fraction(_coeff_of(m2, "y", 1))
    det = p * s - q * r
    if det == 0:
        return None
    e, f_ = s / det, -q / det
    g, h = -r / det, p / det
    if f_ * a2 + h * b2 != 0:
        return None
    lhsA_u = e * a1 + g * b1
    lhsA_v = e * a2 + g * b2
    lhsB_u = f_ * a1 + h * b1
    if not lhsA_u or not lhsA_v or not lhsB_u:
        return None
    ratio = lhsB_u / lhsA_u  # tau/sigma, forced rational
    if ratio**d != lhsA_v / lhsA_u:
        return None
    sigma, tau = Fraction(1), ratio
    rows_psi = [[e / sigma, f_ / tau, 0], [g / sigma, h / tau, 0], [0, 0, 1]]
    psi = ProjectiveMap(rows_psi)
    if psi.det() == 0:
        return None
    lam = _h12_shape_literal(G.pullback(psi))
    if lam is None:
        return None
    return psi, lam


def _solve_2col(rows, target):
    """Solve rows * (c1, c2) = target exactly, or None."""
    piv = [i for i, r in enumerate(rows) if r[0] or r[1]]
    for i in piv:
        for j in piv:
            det = rows[i][0] * rows[j][1] - rows[j][0] * rows[i][1]
            if det == 0:
                continue
            c1 = (target[i] * rows[j][1] - target[j] * rows[i][1]) / det
            c2 = (rows[i][0] * target[j] - rows[j][0] * target[i]) / det
            if all(rows[k][0] * c1 + rows[k][1] * c2 == target[k] for k in range(len(rows))):
                return c1, c2
            return None
    return None

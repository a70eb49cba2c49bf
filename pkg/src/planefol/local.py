"""Singular points and pointwise invariants: mu, nu, tau, kappa, Baum-Bott.

Rational points are handled directly; Galois packets of conjugate algebraic
points are represented through a squarefree modulus m(t), with "nonzero"
conditions decided simultaneously at all conjugates (splitting the modulus
when conjugates disagree).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .foliation import CHART_COORDS, Foliation, PROJ_VARS
from .polynomials import (
    PolyRing,
    Polynomial,
    binary_linear_factors,
    exact_div,
    poly_gcd,
    rational_roots,
    resultant,
    univariate_coeffs,
)
from .rings import QQ, QuotientDomain, normalize_rat, upoly_gcd, upoly_trim


class ProjectivePoint:
    """Point of P^2 over Q or over Q[t]/(m); packets stand for all conjugates."""

    __slots__ = ("domain", "coords")

    def __init__(self, coords, domain=QQ):
        self.domain = domain
        cs = [domain.coerce(c) for c in coords]
        if all(domain.is_zero(c) for c in cs):
            raise ValueError("all projective coordinates vanish")
        for i, c in enumerate(cs):
            if domain.is_zero(c):
                continue
            if domain == QQ or domain.is_unit(c):
                inv = domain.invert(c)
                cs = [domain.mul(v, inv) for v in cs]
                break
        self.coords = tuple(cs)

    @property
    def is_rational(self) -> bool:
        return self.domain == QQ

    @property
    def weight(self) -> int:
        """Number of conjugate points represented."""
        return 1 if self.is_rational else self.domain.deg

    def chart(self) -> str:
        """First coordinate normalized to 1 names the working chart."""
        for name, c in zip(PROJ_VARS, self.coords):
            if not self.domain.is_zero(c) and (self.is_rational or self.domain.is_unit(c)):
                if self.domain.eq(c, self.domain.one):
                    return name
        raise ValueError("point has no unit coordinate")

    def affine_coords(self) -> tuple:
        """(u0, v0) in the chart named by chart()."""
        chart = self.chart()
        u, v = CHART_COORDS[chart]
        pos = {name: i for i, name in enumerate(PROJ_VARS)}
        return (self.coords[pos[u]], self.coords[pos[v]])

    def project(self, subdomain: QuotientDomain) -> "ProjectivePoint":
        return ProjectivePoint([self.domain.project(subdomain, c) for c in self.coords], subdomain)

    def to_strings(self) -> tuple:
        dom = self.domain
        return tuple(dom.to_string(c) for c in self.coords)

    def __repr__(self):
        inner = ":".join(self.to_strings())
        if self.is_rational:
            return f"[{inner}]"
        return f"[{inner}] mod {self.domain!r}"

    def sort_key(self):
        return (0 if self.is_rational else 1, self.to_strings())


# ---------------------------------------------------------------------------
# Local data at a point
# ---------------------------------------------------------------------------


def local_vector_field(F: Foliation, pt: ProjectivePoint) -> tuple:
    """(X1, X2, local ring) with the point translated to the origin."""
    chart = pt.chart()
    u, v = CHART_COORDS[chart]
    X1, X2 = F.vector_field(chart)
    ring = PolyRing(pt.domain, (u, v))
    u0, v0 = pt.affine_coords()
    images = {u: ring.var(u) + ring.const(u0), v: ring.var(v) + ring.const(v0)}
    return _move(X1, ring, images), _move(X2, ring, images), ring


def _move(p: Polynomial, ring: PolyRing, images: dict) -> Polynomial:
    """Substitute into p (living in the chart's projective ring) landing in ring."""
    return p.compose(images, ring)


def jacobian_at_origin(X1: Polynomial, X2: Polynomial, ring: PolyRing) -> tuple:
    u, v = ring.vars
    eu = tuple(1 if w == u else 0 for w in ring.vars)
    ev = tuple(1 if w == v else 0 for w in ring.vars)
    return (
        X1.coefficient(eu),
        X1.coefficient(ev),
        X2.coefficient(eu),
        X2.coefficient(ev),
    )


def valuation(p: Polynomial) -> int:
    if p.is_zero():
        raise ValueError("valuation of zero")
    return min(sum(e) for e in p.terms)


def truncate(p: Polynomial, k: int) -> Polynomial:
    return Polynomial(p.ring, {e: c for e, c in p.terms.items() if sum(e) <= k})


# ---------------------------------------------------------------------------
# Fulton's recursive intersection multiplicity at the origin (over Q)
# ---------------------------------------------------------------------------


def intersection_multiplicity(F: Polynomial, G: Polynomial) -> int | None:
    """I_0(F, G) by Fulton's axioms; None when a common component passes through 0."""
    ring = F.ring
    if ring.domain != QQ:
        raise ValueError("intersection multiplicity requires Q coefficients")
    u, v = ring.vars
    if not F.is_zero() and not G.is_zero():
        g = poly_gcd(F, G)
        if not g.is_constant() and QQ.is_zero(g.eval_all({u: 0, v: 0})):
            return None
    total = 0
    stack = [(F, G)]
    while stack:
        A, B = stack.pop()
        if A.is_zero() or B.is_zero():
            return None
        if A.eval_all({u: 0, v: 0}) or B.eval_all({u: 0, v: 0}):
            continue
        fa = _restrict_v0(A, u, v)
        fb = _restrict_v0(B, u, v)
        ra = len(fa) - 1
        rb = len(fb) - 1
        if ra > rb:
            A, B, fa, fb, ra, rb = B, A, fb, fa, rb, ra
        if ra < 0:
            H = exact_div(A, A.ring.var(v))
            if rb < 0:
                return None
            ordb = next(i for i, cv in enumerate(fb) if cv)
            total += ordb
            stack.append((H, B))
        else:
            coef = Fraction(fb[rb]) / Fraction(fa[ra])
            B2 = B - A * A.ring.monomial(_exp(A.ring, u, rb - ra), coef)
            stack.append((A, B2))
    return total


def _restrict_v0(p: Polynomial, u: str, v: str) -> list:
    iu, iv = p.ring.index[u], p.ring.index[v]
    out = {}
    for e, c in p.terms.items():
        if e[iv] == 0:
            out[e[iu]] = c
    if not out:
        return []
    coeffs = [0] * (max(out) + 1)
    for k, c in out.items():
        coeffs[k] = c
    return upoly_trim(coeffs)


def _exp(ring: PolyRing, var: str, k: int) -> tuple:
    e = [0] * len(ring.vars)
    e[ring.index[var]] = k
    return tuple(e)


# ---------------------------------------------------------------------------
# Branch-aware nonzero tests over quotient rings
# ---------------------------------------------------------------------------


def unit_branches(dom, elem) -> list:
    """[(subdomain, is_nonzero_everywhere)] partitioning the conjugates.

    Over Q this is a single branch.  Over Q[t]/(m) a non-unit, nonzero element
    splits m into the part where it vanishes and the part where it is a unit.
    """
    if dom == QQ:
        return [(None, not QQ.is_zero(elem))]
    g = dom.unit_factor(elem)
    if len(g) == 1:
        return [(dom, True)]
    if len(g) == len(dom.modulus):
        return [(dom, False)]
    zero_part, unit_part = dom.split(g)
    return [(zero_part, False), (unit_part, True)]


def ideal_nonzero_branches(dom, elems) -> list:
    """Branches where at least one of elems is nonzero (conjugate-wise)."""
    if dom == QQ:
        return [(None, any(not QQ.is_zero(e) for e in elems))]
    lifts = [dom.lift(e) for e in elems if not dom.is_zero(e)]
    if not lifts:
        return [(dom, False)]
    g = list(dom.modulus)
    for lf in lifts:
        g = upoly_gcd(g, lf)
        if len(g) == 1:
            return [(dom, True)]
    if len(g) == len(dom.modulus):
        return [(dom, False)]
    zero_part, unit_part = dom.split(g)
    return [(zero_part, False), (unit_part, True)]


# ---------------------------------------------------------------------------
# Singular locus
# ---------------------------------------------------------------------------


@dataclass
class SingularLocus:
    points: list
    complete: bool | None
    milnor_sum: int | None
    expected_sum: int
    notes: list = field(default_factory=list)


def singular_points(F: Foliation) -> SingularLocus:
    """All singular points with coordinates in Q or one quotient-ring extension."""
    if not F.singular_scheme_is_finite():
        raise ValueError("positive-dimensional singular locus")
    pts = []
    notes = []
    ring = F.ring
    x, y, z = PROJ_VARS
    # affine chart z=1
    A = F.a.eval_partial({z: 1})
    B = F.b.eval_partial({z: 1})
    pts_aff, notes_aff = _solve_affine_system(A, B, ring)
    pts.extend(pts_aff)
    notes.extend(notes_aff)
    # line at infinity z=0
    a0 = F.a.eval_partial({z: 0})
    b0 = F.b.eval_partial({z: 0})
    c0 = F.c.eval_partial({z: 0})
    g_inf = None
    for p in (a0, b0, c0):
        if p.is_zero():
            continue
        g_inf = p if g_inf is None else poly_gcd(g_inf, p)
        if g_inf.is_constant():
            break
    if g_inf is not None and not g_inf.is_constant():
        factors, cof = binary_linear_factors(g_inf, x, y)
        for line, _mult in factors:
            cx = line.coefficient(_exp(line.ring, x, 1))
            cy = line.coefficient(_exp(line.ring, y, 1))
            pts.append(ProjectivePoint([cy, QQ.neg(cx), 0]))
        if not cof.is_constant():
            m = univariate_coeffs(cof.eval_partial({y: 1}), x)
            mf, flag = _squarefree_upoly(m)
            if not flag:
                notes.append("infinity modulus had repeated factors; using squarefree part")
            dom = QuotientDomain(mf)
            pts.append(ProjectivePoint([dom.generator(), dom.one, dom.zero], dom))
    # verify by substitution
    for pt in pts:
        _verify_singular(F, pt)
    pts.sort(key=lambda p: p.sort_key())
    # completeness by Milnor count
    expected = F.degree**2 + F.degree + 1
    total = 0
    unknown = False
    for pt in pts:
        mu = _milnor_weight(F, pt)
        if mu is None:
            unknown = True
            notes.append(f"Milnor number not computed at {pt!r}")
        else:
            total += mu
    if unknown:
        complete = None
    elif total == expected:
        complete = True
    else:
        complete = None
        notes.append(f"Milnor sum {total} != {expected}; elimination may have missed points")
    return SingularLocus(points=pts, complete=complete, milnor_sum=None if unknown else total, expected_sum=expected, notes=notes)


def _squarefree_upoly(coeffs: list) -> tuple:
    from .rings import upoly_derivative, upoly_divmod, upoly_monic

    m = upoly_monic(upoly_trim(list(coeffs)))
    g = upoly_gcd(m, upoly_derivative(m))
    if len(g) == 1:
        return m, True
    q, _ = upoly_divmod(m, g)
    return upoly_monic(q), False


def _solve_affine_system(A: Polynomial, B: Polynomial, ring: PolyRing) -> tuple:
    """Common zeros of two coprime bivariate polynomials over Q (chart z=1)."""
    x, y = PROJ_VARS[0], PROJ_VARS[1]
    pts = []
    notes = []
    if A.is_zero() or B.is_zero():
        raise ValueError("degenerate affine system")
    da, db = A.degree_in(y), B.degree_in(y)
    if da == 0 and db == 0:
        g = poly_gcd(A, B)
        if g.is_constant():
            return pts, notes
        raise ValueError("degenerate affine system")
    if da == 0 or db == 0:
        # one equation is a polynomial in x only: its roots drive the other
        res = A if da == 0 else B
    else:
        res = resultant(A, B, y)
    if res.is_zero():
        raise ValueError("resultant vanished despite coprime inputs")
    if res.is_constant():
        return pts, notes
    coeffs = univariate_coeffs(res, x)
    roots = rational_roots(coeffs)
    rem = list(coeffs)
    from .rings import upoly_divmod

    for r, mult in roots:
        fr = Fraction(r)
        for _ in range(mult):
            rem = upoly_divmod(rem, [-fr.numerator, fr.denominator])[0]
    for x0, _m in roots:
        pts.extend(_points_over_x(A, B, QQ, x0, ring))
    rem_sf, _flag = _squarefree_upoly(rem) if len(rem) > 1 else (rem, True)
    if len(rem_sf) > 1:
        dom = QuotientDomain(rem_sf)
        pts2, more = _points_over_x(A, B, dom, dom.generator(), ring, splitting=True)
        pts.extend(pts2)
        notes.extend(more)
    return pts, notes


def _points_over_x(A, B, dom, x0, ring, splitting=False):
    """Solve for y above a given x (rational or the class of t in a packet)."""
    x, y = PROJ_VARS[0], PROJ_VARS[1]
    local = PolyRing(dom, (y,))
    out = []
    notes = []

    def specialize(P):
        terms = {}
        iy = P.ring.index[y]
        ix = P.ring.index[x]
        for e, c in P.terms.items():
            val = dom.coerce(c)
            if e[ix]:
                if dom == QQ:
                    val = dom.mul(val, QQ.coerce(Fraction(x0) ** e[ix]))
                else:
                    val = dom.mul(val, dom.pow(x0, e[ix]))
            key = (e[iy],)
            terms[key] = dom.add(terms.get(key, dom.zero), val)
        return local.poly(terms)

    branches = [(dom, specialize(A), specialize(B))]
    while branches:
        bdom, a1, b1 = branches.pop()
        if a1.is_zero() and b1.is_zero():
            notes.append("unexpected identically-zero specialization")
            continue
        g, splits = _euclid_with_splits(a1, b1)
        for sub, gb in splits:
            branches.append((sub, *gb))
        if g is None:
            continue
        gdom = g.ring.domain
        dy = g.degree_in(y)
        if dy == 0:
            continue  # spurious resultant root (leading coefficients vanished)
        if dy == 1:
            c1 = g.coefficient((1,))
            c0 = g.coefficient((0,))
            try:
                inv = gdom.invert(c1) if gdom != QQ else QQ.invert(c1)
            except Exception:
                notes.append("leading coefficient of linear gcd not a unit")
                continue
            y0 = gdom.neg(gdom.mul(c0, inv))
            if gdom == QQ:
                out.append(ProjectivePoint([x0, y0, 1]))
            else:
                xx = x0 if gdom == dom else dom.project(gdom, x0)
                out.append(ProjectivePoint([xx, y0, gdom.one], gdom))
        else:
            if gdom == QQ:
                coeffs = univariate_coeffs(g, y)
                for y0, _m in rational_roots(coeffs):
                    out.append(ProjectivePoint([x0, y0, 1]))
                sf, _ = _squarefree_upoly(coeffs)
                from .rings import upoly_divmod

                remq = list(sf)
                for y0, _m in rational_roots(sf):
                    fr = Fraction(y0)
                    remq = upoly_divmod(remq, [-fr.numerator, fr.denominator])[0]
                if len(remq) > 1:
                    dom2 = QuotientDomain(remq)
                    out.append(ProjectivePoint([QQ_to(dom2, x0), dom2.generator(), dom2.one], dom2))
            else:
                notes.append(
                    "two-variable extension needed (gcd degree >= 2 over a packet); points not represented"
                )
    return (out, notes) if splitting else out


def QQ_to(dom: QuotientDomain, value) -> tuple:
    return dom.coerce(value)


def _euclid_with_splits(a: Polynomial, b: Polynomial):
    """Monic gcd in (Q[t]/(m))[y] with dynamic splitting of the modulus.

    Returns (gcd_or_None, [(subdomain, (a', b')) ...]) where the listed
    branches still need processing.
    """
    ring = a.ring
    dom = ring.domain
    y = ring.vars[0]
    splits = []
    while True:
        if a.is_zero() and b.is_zero():
            return None, splits
        if b.is_zero():
            a, b = b, a
        if a.is_zero():
            # normalize b monic if possible
            lead = b.coefficient((b.degree_in(y),))
            if dom == QQ:
                return b, splits
            g = dom.unit_factor(lead)
            if len(g) == 1:
                inv = dom.invert(lead)
                return b.scale(inv), splits
            if len(g) == len(dom.modulus):
                # leading coefficient identically zero: drop it
                b = Polynomial(ring, {e: c for e, c in b.terms.items() if e[0] != b.degree_in(y)})
                continue
            d1, d2 = dom.split(g)
            splits.append((d1, _project_pair(a, b, d1)))
            dom = d2
            ring = PolyRing(dom, (y,))
            a, b = _project_pair(a, b, dom)
            continue
        if a.degree_in(y) < b.degree_in(y):
            a, b = b, a
        # reduce a modulo b; b's leading coefficient must be a unit
        dbm = b.degree_in(y)
        lead = b.coefficient((dbm,))
        if dom != QQ:
            g = dom.unit_factor(lead)
            if len(g) == len(dom.modulus):
                b = Polynomial(ring, {e: c for e, c in b.terms.items() if e[0] != dbm})
                continue
            if len(g) > 1:
                d1, d2 = dom.split(g)
                splits.append((d1, _project_pair(a, b, d1)))
                dom = d2
                ring = PolyRing(dom, (y,))
                a, b = _project_pair(a, b, dom)
                continue
            inv = dom.invert(lead)
        else:
            inv = QQ.invert(lead)
        bm = b.scale(inv)
        r = a
        while not r.is_zero() and r.degree_in(y) >= dbm:
            dr = r.degree_in(y)
            lc = r.coefficient((dr,))
            r = r - bm * Polynomial(ring, {(dr - dbm,): lc})
        a, b = bm, r


def _project_pair(a: Polynomial, b: Polynomial, sub: QuotientDomain) -> tuple:
    src = a.ring.domain
    ring = PolyRing(sub, a.ring.vars)
    pa = ring.poly({e: src.project(sub, c) for e, c in a.terms.items()})
    pb = ring.poly({e: src.project(sub, c) for e, c in b.terms.items()})
    return pa, pb


def _verify_singular(F: Foliation, pt: ProjectivePoint):
    dom = pt.domain
    vals = dict(zip(PROJ_VARS, pt.coords))
    for p in F.form():
        target = PolyRing(dom, PROJ_VARS)
        q = p.map_into(target) if dom != QQ else p
        v = q.eval_all(vals)
        if not dom.is_zero(v):
            raise ArithmeticError(f"claimed singular point {pt!r} fails substitution")


def _milnor_weight(F: Foliation, pt: ProjectivePoint) -> int | None:
    """Total Milnor contribution of the point (or packet); None if unknown."""
    if pt.is_rational:
        return milnor_number(F, pt)
    X1, X2, ring = local_vector_field(F, pt)
    a11, a12, a21, a22 = jacobian_at_origin(X1, X2, ring)
    dom = pt.domain
    det = dom.sub(dom.mul(a11, a22), dom.mul(a12, a21))
    total = 0
    for sub, nonzero in unit_branches(dom, det):
        if not nonzero:
            return None
        total += sub.deg if sub is not None else 1
    return total


# ---------------------------------------------------------------------------
# Pointwise invariants
# ---------------------------------------------------------------------------


def milnor_is_one(F: Foliation, pt: ProjectivePoint) -> list:
    """[(branch domain or None, flag)]: whether det Jac is nonzero, per conjugate branch."""
    X1, X2, ring = local_vector_field(F, pt)
    a11, a12, a21, a22 = jacobian_at_origin(X1, X2, ring)
    dom = pt.domain
    det = dom.sub(dom.mul(a11, a22), dom.mul(a12, a21))
    return unit_branches(dom, det)


def milnor_number(F: Foliation, pt: ProjectivePoint) -> int | None:
    """Full Milnor number at a rational point via the recursive intersection count."""
    if not pt.is_rational:
        raise ValueError("full Milnor number is computed at rational points only")
    X1, X2, ring = local_vector_field(F, pt)
    return intersection_multiplicity(X1, X2)


def bb_index(F: Foliation, pt: ProjectivePoint):
    """tr^2/det of the Jacobian; requires mu = 1 (unit determinant)."""
    X1, X2, ring = local_vector_field(F, pt)
    a11, a12, a21, a22 = jacobian_at_origin(X1, X2, ring)
    dom = pt.domain
    det = dom.sub(dom.mul(a11, a22), dom.mul(a12, a21))
    tr = dom.add(a11, a22)
    if dom == QQ:
        if QQ.is_zero(det):
            raise ArithmeticError("degenerate singular point has no Baum-Bott index")
        return normalize_rat(Fraction(tr) ** 2 / Fraction(det))
    inv = dom.invert(det)  # NonUnitError propagates the discovered factor
    return dom.mul(dom.mul(tr, tr), inv)


def bb_equals(F: Foliation, pt: ProjectivePoint, value) -> bool:
    """Exact test BB = value at every conjugate of the point."""
    X1, X2, ring = local_vector_field(F, pt)
    a11, a12, a21, a22 = jacobian_at_origin(X1, X2, ring)
    dom = pt.domain
    det = dom.sub(dom.mul(a11, a22), dom.mul(a12, a21))
    tr = dom.add(a11, a22)
    val = dom.coerce(Fraction(value))
    lhs = dom.sub(dom.mul(tr, tr), dom.mul(val, det))
    branches = unit_branches(dom, det)
    if any(not ok for _, ok in branches):
        raise ArithmeticError("degenerate conjugates present; BB undefined")
    return dom.is_zero(lhs)


def nu_tau(F: Foliation, pt: ProjectivePoint) -> tuple:
    """(nu, [(branch, tau)]) at a singular point."""
    X1, X2, ring = local_vector_field(F, pt)
    dom = pt.domain
    u, v = ring.vars
    nu = min(valuation(X1) if not X1.is_zero() else 10**9, valuation(X2) if not X2.is_zero() else 10**9)
    d = F.degree
    uu, vv = ring.var(u), ring.var(v)
    taus = []
    pending = [dom if dom != QQ else None]
    for k in range(1, d + 2):
        if not pending:
            break
        detk = truncate(X1, k) * vv - truncate(X2, k) * uu
        coeffs = list(detk.terms.values())
        still = []
        for bdom in pending:
            if bdom is None:
                if any(not QQ.is_zero(c) for c in coeffs):
                    taus.append((None, k))
                else:
                    still.append(None)
            else:
                elems = [dom_project(dom, bdom, c) for c in coeffs] if bdom != dom else list(coeffs)
                for sub, nonzero in ideal_nonzero_branches(bdom, elems):
                    if nonzero:
                        taus.append((sub, k))
                    else:
                        still.append(sub)
        pending = still
    for bdom in pending:
        taus.append((bdom, None))  # unreachable for a primitive form of positive degree
    return nu, taus


def dom_project(src, dst, elem):
    if src == dst:
        return elem
    return src.project(dst, elem)


def tangency_order(F: Foliation, line_ab, pt: ProjectivePoint, chart: str = None):
    """Tang(F, l, p) for the line a(u-u0) + b(v-v0) = 0 through the point.

    Returns an int, or None for an invariant line (infinite tangency).
    """
    chart = chart or pt.chart()
    u, v = CHART_COORDS[chart]
    X1, X2 = F.vector_field(chart)
    dom = pt.domain
    a, b = (dom.coerce(line_ab[0]), dom.coerce(line_ab[1]))
    if dom.is_zero(a) and dom.is_zero(b):
        raise ValueError("degenerate line")
    u0, v0 = pt.affine_coords()
    tring = PolyRing(dom, ("t",))
    t = tring.var("t")
    images = {u: t.scale(b) + tring.const(u0), v: t.scale(dom.neg(a)) + tring.const(v0)}
    P = _move(X1, tring, images).scale(a) + _move(X2, tring, images).scale(b)
    if P.is_zero():
        return None
    if dom == QQ:
        return valuation(P)
    raise ValueError("use tangency_branches for packet points")


def tangency_branches(F: Foliation, line_ab, pt: ProjectivePoint) -> list:
    """[(branch domain, Tang or None)] for packets (None = invariant)."""
    chart = pt.chart()
    u, v = CHART_COORDS[chart]
    X1, X2 = F.vector_field(chart)
    dom = pt.domain
    if dom == QQ:
        return [(None, tangency_order(F, line_ab, pt))]
    a, b = (dom.coerce(line_ab[0]), dom.coerce(line_ab[1]))
    u0, v0 = pt.affine_coords()
    tring = PolyRing(dom, ("t",))
    t = tring.var("t")
    images = {u: t.scale(b) + tring.const(u0), v: t.scale(dom.neg(a)) + tring.const(v0)}
    P = _move(X1, tring, images).scale(a) + _move(X2, tring, images).scale(b)
    coef_by_deg = {e[0]: c for e, c in P.terms.items()}
    out = []
    pending = [dom]
    maxdeg = max(coef_by_deg) if coef_by_deg else -1
    for k in range(0, maxdeg + 1):
        if not pending:
            break
        ck = coef_by_deg.get(k)
        still = []
        for bdom in pending:
            if ck is None:
                still.append(bdom)
                continue
            elem = dom_project(dom, bdom, ck)
            for sub, nonzero in unit_branches(bdom, elem):
                if nonzero:
                    out.append((sub, k))
                else:
                    still.append(sub)
        pending = still
    for bdom in pending:
        out.append((bdom, None))
    return out


# ---------------------------------------------------------------------------
# kappa, Lambda and classification
# ---------------------------------------------------------------------------


def line_jet_forms(F: Foliation, pt: ProjectivePoint) -> tuple:
    """(tau, forms) where forms[i] is the degree-(i+1) form Q_{i+1}(a, b).

    Q_{i+1}(a,b) = a*A_i(b,-a) + b*B_i(b,-a) for the homogeneous components
    (A_i, B_i) of the local vector field; a line a*u + b*v = 0 through the
    point has tangency min{ i : Q_{i+1}(a,b) != 0 }.
    """
    if not pt.is_rational:
        raise ValueError("jet forms are computed at rational points")
    X1, X2, ring = local_vector_field(F, pt)
    u, v = ring.vars
    ab = PolyRing(QQ, ("a", "b"))
    av, bv = ab.var("a"), ab.var("b")
    images = {u: bv, v: -av}
    top = max(X1.total_degree(), X2.total_degree())
    forms = {}
    for i in range(1, top + 1):
        Ai = Polynomial(ring, {e: c for e, c in X1.terms.items() if sum(e) == i})
        Bi = Polynomial(ring, {e: c for e, c in X2.terms.items() if sum(e) == i})
        Q = av * Ai.compose(images, ab) + bv * Bi.compose(images, ab)
        if not Q.is_zero():
            forms[i] = Q
    tau = min(forms) if forms else None
    return tau, forms


def kappa_and_lambda(F: Foliation, pt: ProjectivePoint) -> dict:
    """kappa, the exceptional-line set Lambda, and a maximal-tangency witness."""
    d = F.degree
    tau, forms = line_jet_forms(F, pt)
    if tau is None:
        raise ValueError("all lines through the point are invariant")
    res = {
        "tau": tau,
        "kappa": tau,
        "lambda_rational": [],
        "lambda_size": 0,
        "witness": None,
    }
    Qt = forms[tau]
    factors, cof = binary_linear_factors(Qt, "a", "b")
    ab = Qt.ring
    ea = _exp(ab, "a", 1)
    eb = _exp(ab, "b", 1)
    for line, _mult in factors:
        p = line.coefficient(ea)
        q = line.coefficient(eb)
        root = (q, QQ.neg(p))
        t = tangency_order(F, root, pt)
        if t is None:
            continue  # invariant line, not in Lambda
        if t > d:
            raise ArithmeticError("non-invariant line with tangency above the degree bound")
        res["lambda_rational"].append(root)
        res["lambda_size"] += 1
        if t > res["kappa"]:
            res["kappa"] = t
        if t == d and res["witness"] is None:
            res["witness"] = root
    if not cof.is_constant():
        mono = univariate_coeffs(cof.eval_partial({"b": 1}), "a")
        msf, _ = _squarefree_upoly(mono)
        if len(msf) > 1:
            dom = QuotientDomain(msf)
            pt_ext = ProjectivePoint([dom.coerce(c) for c in pt.coords], dom)
            for sub, t in tangency_branches(F, (dom.generator(), dom.one), pt_ext):
                if t is None:
                    continue
                if t > d:
                    raise ArithmeticError("non-invariant line with tangency above the degree bound")
                res["lambda_size"] += sub.deg
                if t > res["kappa"]:
                    res["kappa"] = t
    if res["witness"] is None and res["kappa"] == d and tau == d:
        # generic lines already meet the foliation to order d; find a rational one
        for a0, b0 in ((1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (3, 1), (1, 3)):
            if tangency_order(F, (a0, b0), pt) == d:
                res["witness"] = (a0, b0)
                break
    return res


@dataclass
class LocalProfile:
    point: ProjectivePoint
    branch: object  # None (rational / whole packet) or a sub-QuotientDomain
    weight: int
    nu: int
    tau: int | None
    mu_is_one: bool
    mu: int | None
    bb: object
    kappa: int | None
    lambda_rational: list
    lambda_size: int | None
    tag: str
    witness: tuple | None


def _tag(nu, tau, mu_is_one, bb_is_4, kappa):
    if nu == 1 and tau is not None and tau >= 2:
        return f"radial({tau - 1})"
    if mu_is_one and bb_is_4 and kappa is not None and kappa >= 2:
        return f"quasi-radial({kappa - 1})"
    if not mu_is_one:
        return "degenerate"
    return "plain"


def classify(F: Foliation, pt: ProjectivePoint) -> list:
    """LocalProfile branches for a singular point (one branch per conjugate class)."""
    nu, taus = nu_tau(F, pt)
    out = []
    if pt.is_rational:
        mu = milnor_number(F, pt)
        mu1 = mu == 1
        bb = bb_index(F, pt) if mu1 else None
        kl = kappa_and_lambda(F, pt)
        tau = taus[0][1]
        tag = _tag(nu, tau, mu1, bb == 4 if bb is not None else False, kl["kappa"])
        out.append(
            LocalProfile(
                point=pt,
                branch=None,
                weight=1,
                nu=nu,
                tau=tau,
                mu_is_one=mu1,
                mu=mu,
                bb=bb,
                kappa=kl["kappa"],
                lambda_rational=kl["lambda_rational"],
                lambda_size=kl["lambda_size"],
                tag=tag,
                witness=kl["witness"],
            )
        )
        return out
    # packet: mu-is-one and tau per branch; kappa/Lambda are offered at rational points only
    mu_branches = milnor_is_one(F, pt)
    for bdom, mu1 in mu_branches:
        sub_tau = None
        for tdom, tau in taus:
            if tdom is None or bdom is None:
                sub_tau = tau
                break
            lift_t = upoly_trim(list(tdom.modulus))
            lift_b = upoly_trim(list(bdom.modulus))
            g = upoly_gcd(lift_t, lift_b)
            if len(g) == len(lift_b):  # bdom's modulus divides tdom's branch
                sub_tau = tau
                break
        bb = None
        if mu1:
            sub_pt = pt.project(bdom) if bdom is not None and bdom != pt.domain else pt
            try:
                bb = bb_index(F, sub_pt)
            except Exception:
                bb = None
        bb_is_4 = False
        if bb is not None and bdom is not None:
            bb_is_4 = bdom.eq(bb, bdom.coerce(4))
        elif bb is not None:
            bb_is_4 = bb == 4
        tag = _tag(nu, sub_tau, mu1, bb_is_4, None)
        out.append(
            LocalProfile(
                point=pt,
                branch=bdom,
                weight=bdom.deg if bdom is not None else 1,
                nu=nu,
                tau=sub_tau,
                mu_is_one=mu1,
                mu=1 if mu1 else None,
                bb=bb,
                kappa=None,
                lambda_rational=[],
                lambda_size=None,
                tag=tag,
                witness=None,
            )
        )
    return out


def u1_membership(F: Foliation) -> dict:
    """Whether every singular point has mu = 1 and tau = 1."""
    loc = singular_points(F)
    ok = True
    reasons = []
    for pt in loc.points:
        for b, mu1 in milnor_is_one(F, pt):
            if not mu1:
                ok = False
                reasons.append(f"mu > 1 at {pt!r}" + (f" on branch {b!r}" if b is not None else ""))
        _, taus = nu_tau(F, pt)
        for b, tau in taus:
            if tau != 1:
                ok = False
                reasons.append(f"tau = {tau} at {pt!r}" + (f" on branch {b!r}" if b is not None else ""))
    return {
        "member": ok,
        "conditional": loc.complete is not True,
        "reasons": reasons,
        "locus": loc,
    }


def quasi_radial_maximal(F: Foliation) -> list:
    """Rational quasi-radial singularities of order d-1 with a rational witness line."""
    d = F.degree
    loc = singular_points(F)
    hits = []
    for pt in loc.points:
        if not pt.is_rational:
            continue  # certificates need rational normalizations
        mu1 = milnor_is_one(F, pt)[0][1]
        if not mu1:
            continue
        if bb_index(F, pt) != 4:
            continue
        kl = kappa_and_lambda(F, pt)
        if kl["kappa"] == d and kl["witness"] is not None:
            hits.append((pt, kl["witness"]))
    return hits

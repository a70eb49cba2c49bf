"""Inflection divisor, its invariant/transverse split, convexity and flex search."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .foliation import CHART_COORDS, Foliation, PROJ_VARS
from .local import (
    ProjectivePoint,
    _exp,
    _squarefree_upoly,
    singular_points,
    tangency_branches,
    tangency_order,
)
from .polynomials import (
    PolyRing,
    Polynomial,
    exact_div,
    linear_homogeneous_factors,
    poly_gcd,
    rational_roots,
    squarefree_part,
    resultant,
    univariate_coeffs,
)
from .rings import PrimeDomain, QuotientDomain


@dataclass
class Divisor:
    """Formal product of pairwise-coprime homogeneous factors with multiplicities."""

    factors: list  # [(Polynomial, int)]
    notes: list = field(default_factory=list)

    def __post_init__(self):
        self.factors = sorted(
            [(f, m) for f, m in self.factors if m > 0],
            key=lambda fm: (fm[0].total_degree(), fm[0].to_string()),
        )

    @property
    def degree(self) -> int:
        return sum(f.total_degree() * m for f, m in self.factors)

    def is_trivial(self) -> bool:
        return not self.factors

    def is_reduced(self) -> bool:
        return all(m == 1 for _, m in self.factors)

    def product(self, ring: PolyRing) -> Polynomial:
        acc = ring.one()
        for f, m in self.factors:
            acc = acc * f**m
        return acc

    def to_strings(self) -> list:
        return [(f.to_string(), m) for f, m in self.factors]

    def __repr__(self):
        if not self.factors:
            return "1"
        return " * ".join(f"({f.to_string()})^{m}" if m > 1 else f"({f.to_string()})" for f, m in self.factors)


def apply_dual_field(F: Foliation, f: Polynomial) -> Polynomial:
    """Z(f) for the degree-d dual vector field Z of the foliation."""
    U, V, W = F.dual_vector_field()
    return U * f.derivative("x") + V * f.derivative("y") + W * f.derivative("z")


def extactic_polynomial(F: Foliation) -> Polynomial:
    """The degree-3d inflection determinant |x Z(x) Z^2(x); y ...; z ...|."""
    ring = F.ring
    U, V, W = F.dual_vector_field()
    Z2 = [apply_dual_field(F, U), apply_dual_field(F, V), apply_dual_field(F, W)]
    x, y, z = (ring.var(v) for v in PROJ_VARS)
    cols = [(x, U, Z2[0]), (y, V, Z2[1]), (z, W, Z2[2])]
    det = (
        cols[0][0] * (cols[1][1] * cols[2][2] - cols[1][2] * cols[2][1])
        - cols[0][1] * (cols[1][0] * cols[2][2] - cols[1][2] * cols[2][0])
        + cols[0][2] * (cols[1][0] * cols[2][1] - cols[1][1] * cols[2][0])
    )
    return det.normalized() if not det.is_zero() else det


def _squarefree_fast(g: Polynomial) -> bool:
    """Cheap proof of squarefreeness by reduction mod a small prime (False = unknown)."""
    for p in (3, 5, 7):
        try:
            if squarefree_mod_p(g, p):
                return True
        except ValueError:
            continue
    return False


def multiplicity_split(g: Polynomial) -> list:
    """[(factor, multiplicity)] with factors squarefree and pairwise coprime."""
    if _squarefree_fast(g):
        return [(g.normalized(), 1)]
    out = []
    parts = []
    h = g
    while not h.is_constant():
        s, _flag = squarefree_part(h)
        parts.append(s)
        h = exact_div(h, s)
    for i in range(len(parts)):
        nxt = parts[i + 1] if i + 1 < len(parts) else None
        piece = parts[i] if nxt is None else exact_div(parts[i], poly_gcd(parts[i], nxt))
        if piece is None:
            raise ArithmeticError("multiplicity split failed")
        if not piece.is_constant():
            out.append((piece.normalized(), i + 1))
    return out


def inflection_divisor(F: Foliation) -> Divisor:
    """Inflection divisor: rational lines split off, cofactors split by multiplicity."""
    E = extactic_polynomial(F)
    if E.is_zero():
        raise ValueError("inflection divisor undefined (degree 0 or 1 foliation is convex)")
    d = F.degree
    if E.total_degree() != 3 * d:
        raise ArithmeticError("inflection determinant has unexpected degree")
    lines, cofactor, maybe_lines = linear_homogeneous_factors(E)
    factors = list(lines)
    notes = []
    if not cofactor.is_constant():
        for piece, mult in multiplicity_split(cofactor):
            factors.append((piece, mult))
        if maybe_lines:
            notes.append("nonlinear cofactor kept whole (may contain non-rational lines)")
    div = Divisor(factors, notes=notes)
    if div.degree != 3 * d:
        raise ArithmeticError("inflection divisor degree bookkeeping failed")
    return div


def _is_binary_form(f: Polynomial) -> bool:
    used = [v for v in f.variables_used() if v in PROJ_VARS]
    return len(used) <= 2


def decompose_divisor(F: Foliation, div: Divisor = None) -> tuple:
    """(I_inv, I_tr): factors routed by the invariance test."""
    if div is None:
        div = inflection_divisor(F)
    inv = []
    tr = []
    notes = list(div.notes)
    for f, m in div.factors:
        if F.is_invariant_curve(f):
            if f.total_degree() > 1 and not _is_binary_form(f):
                notes.append(
                    f"invariant factor {f.to_string()} is not visibly a product of lines; "
                    "flagged undecided and routed to the invariant part"
                )
            inv.append((f, m))
        else:
            tr.append((f, m))
    return Divisor(inv, notes=notes), Divisor(tr)


def is_convex(F: Foliation) -> bool:
    _, tr = decompose_divisor(F)
    return tr.degree == 0


# ---------------------------------------------------------------------------
# Flexes
# ---------------------------------------------------------------------------


def iterated_field_values(F: Foliation, chart: str, upto: int) -> tuple:
    """Polynomials (X^j(u), X^j(v)) for j = 1..upto in the chart."""
    X1, X2 = F.vector_field(chart)
    u, v = CHART_COORDS[chart]

    def apply(f):
        return X1 * f.derivative(u) + X2 * f.derivative(v)

    gs = [X1]
    hs = [X2]
    for _ in range(upto - 1):
        gs.append(apply(gs[-1]))
        hs.append(apply(hs[-1]))
    return gs, hs


def flex_order(F: Foliation, pt: ProjectivePoint) -> dict:
    """Tangency of the leaf's tangent line at a regular point, by the rank test.

    Returns {"kind": "transverse", "tangency": k} with 1 <= k <= d, or
    {"kind": "trivial"} when the tangent line is invariant.
    """
    chart = pt.chart()
    dom = pt.domain
    d = F.degree
    gs, hs = iterated_field_values(F, chart, d)
    u0, v0 = pt.affine_coords()
    u, v = CHART_COORDS[chart]
    vals = {u: u0, v: v0}
    ring = PolyRing(dom, (u, v))

    def at(p):
        return _specialize(p, ring, vals)

    x1, y1 = at(gs[0]), at(hs[0])
    if dom.is_zero(x1) and dom.is_zero(y1):
        raise ValueError("flex order is defined at regular points only")
    if not pt.is_rational:
        return _flex_order_packet(F, pt, (x1, y1))
    k = 1
    while k < d:
        det = dom.sub(dom.mul(x1, at(hs[k])), dom.mul(y1, at(gs[k])))
        if not dom.is_zero(det):
            break
        k += 1
    tangent = (y1, dom.neg(x1))
    t = tangency_order(F, tangent, pt)
    if t is None:
        return {"kind": "trivial", "tangent": tangent}
    if t != k:
        raise ArithmeticError("rank criterion disagrees with the tangency valuation")
    return {"kind": "transverse", "tangency": k, "tangent": tangent}


def _flex_order_packet(F: Foliation, pt: ProjectivePoint, xy1) -> dict:
    tangent = (xy1[1], pt.domain.neg(xy1[0]))
    branches = tangency_branches(F, tangent, pt)
    return {"kind": "branches", "tangent": tangent, "branches": branches}


def _specialize(p: Polynomial, ring: PolyRing, vals: dict):
    dom = ring.domain
    acc = dom.zero
    for e, c in p.terms.items():
        term = dom.coerce(c)
        for i, k in enumerate(e):
            if not k:
                continue
            name = p.ring.vars[i]
            if name not in vals:
                raise ValueError(f"missing value for {name}")
            val = dom.coerce(vals[name])
            for _ in range(k):
                term = dom.mul(term, val)
        acc = dom.add(acc, term)
    return acc


def maximal_flex_search(F: Foliation) -> dict:
    """Search Flex(F, d-1): rational witnesses, packet witnesses, or absence report.

    The result is a semi-decision: "found" is a proof; "not found" is only as
    strong as the elimination representation (one quotient-ring extension).
    """
    d = F.degree
    if d < 2:
        raise ValueError("flex search needs degree >= 2")
    sing = {tuple(p.to_strings()) for p in singular_points(F).points if p.is_rational}
    witnesses = []
    notes = []

    def try_point(pt: ProjectivePoint):
        key = tuple(pt.to_strings())
        if pt.is_rational and key in sing:
            return False
        try:
            res = flex_order(F, pt)
        except ValueError:
            return False
        if res["kind"] == "transverse" and res["tangency"] == d:
            witnesses.append(pt)
            return True
        if res["kind"] == "branches":
            hits = [(b, t) for b, t in res["branches"] if t == d]
            if hits and len(hits) == len(res["branches"]):
                witnesses.append(pt)
                return True
            if hits:
                witnesses.append(pt.project(hits[0][0]))
                return True
        return False

    # affine chart z = 1
    found_affine = _flex_search_chart(F, "z", d, try_point, notes)
    # the line at infinity inside chart x = 1, plus the remaining point [0:1:0]
    _flex_search_infinity(F, d, try_point, notes)
    try:
        try_point(ProjectivePoint([0, 1, 0]))
    except Exception:
        pass
    complete = found_affine and not any("unverified" in n for n in notes)
    return {
        "found": bool(witnesses),
        "witnesses": witnesses,
        "notes": notes,
        "certificate": "witness" if witnesses else ("no-candidates" if complete else "not-found-inconclusive"),
    }


def _flex_search_chart(F: Foliation, chart: str, d: int, try_point, notes) -> bool:
    """Candidates in one affine chart; returns True if the candidate set was exhausted."""
    u, v = CHART_COORDS[chart]
    gs, hs = iterated_field_values(F, chart, d)
    ring = gs[0].ring
    dets = [gs[0] * hs[j] - hs[0] * gs[j] for j in range(1, d)]
    dets = [p for p in dets if not p.is_zero()]
    if not dets:
        notes.append("determinant system is identically zero")
        return False
    G = dets[0]
    for p in dets[1:]:
        G = poly_gcd(G, p)
        if G.is_constant():
            break
    exhausted = True
    if not G.is_constant():
        # a positive-dimensional candidate family: sample rational sections
        hit = False
        for c in range(-6, 7):
            for var, other in ((u, v), (v, u)):
                sect = G.eval_partial({var: Fraction(c)})
                if sect.is_zero():
                    for c2 in range(-6, 7):
                        pt = _chart_point(chart, {var: Fraction(c), other: Fraction(c2)})
                        hit = try_point(pt) or hit
                    continue
                if sect.is_constant():
                    continue
                coeffs = univariate_coeffs(sect, other)
                for root, _m in rational_roots(coeffs):
                    pt = _chart_point(chart, {var: Fraction(c), other: Fraction(root)})
                    hit = try_point(pt) or hit
        if not hit:
            notes.append("positive-dimensional candidate family sampled without a verified witness (unverified)")
            exhausted = False
        return exhausted
    # zero-dimensional: eliminate v
    res_list = []
    base = dets[0]
    for p in dets[1:]:
        if base.degree_in(v) > 0 and p.degree_in(v) > 0:
            r = resultant(base, p, v)
        else:
            r = base if p.degree_in(v) == 0 else p
        if not r.is_zero():
            res_list.append(r)
    if not res_list:
        res_list = [base]
    R = res_list[0]
    for p in res_list[1:]:
        R = poly_gcd(R, p)
        if R.is_constant():
            break
    if R.is_constant():
        return True  # no solutions in this chart
    coeffs = univariate_coeffs(R, u) if R.degree_in(v) == 0 else None
    if coeffs is None:
        notes.append("elimination left a bivariate remainder (unverified)")
        return False
    for root, _m in rational_roots(coeffs):
        sect = [p.eval_partial({u: Fraction(root)}) for p in dets]
        g = None
        for s in sect:
            if s.is_zero():
                continue
            g = s if g is None else poly_gcd(g, s)
            if g.is_constant():
                break
        if g is None or g.is_constant():
            continue
        for yroot, _m2 in rational_roots(univariate_coeffs(g, v)):
            try_point(_chart_point(chart, {u: Fraction(root), v: Fraction(yroot)}))
    rem = list(univariate_coeffs(R, u))
    from .rings import upoly_divmod

    for root, mult in rational_roots(rem):
        fr = Fraction(root)
        for _ in range(mult):
            rem = upoly_divmod(rem, [-fr.numerator, fr.denominator])[0]
    rem_sf, _ = _squarefree_upoly(rem) if len(rem) > 1 else (rem, True)
    if len(rem_sf) > 1:
        dom = QuotientDomain(rem_sf)
        t0 = dom.generator()
        # solve the remaining determinant system above t0
        sect = [_specialize_poly_x(p, u, v, dom, t0) for p in dets]
        gcds, splits_unverified = _gcd_chain_packet(sect, v)
        for bdom, g in gcds:
            if g is None or g.degree_in(v) != 1:
                if g is not None and g.degree_in(v) > 1:
                    notes.append("packet candidates with unrepresented second extension (unverified)")
                continue
            c1 = g.coefficient(_exp(g.ring, v, 1))
            c0 = g.coefficient(tuple(0 for _ in g.ring.vars))
            try:
                inv = bdom.invert(c1)
            except Exception:
                notes.append("packet back-substitution hit a zero divisor (unverified)")
                continue
            y0 = bdom.neg(bdom.mul(c0, inv))
            x0 = dom.project(bdom, t0) if bdom != dom else t0
            pt = _packet_chart_point(chart, bdom, x0, y0)
            try_point(pt)
        if splits_unverified:
            notes.append("packet gcd chain left undecided branches (unverified)")
    return exhausted


def _gcd_chain_packet(polys, var):
    """Gcd of univariate polynomials over a packet domain, branch-aware."""
    from .local import _euclid_with_splits

    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return [], True
    out = []
    unverified = False
    stack = [(polys[0].ring.domain, polys)]
    while stack:
        dom, ps = stack.pop()
        g = ps[0]
        ok = True
        for p in ps[1:]:
            g2, splits = _euclid_with_splits(g, p)
            for sub, pair in splits:
                ring = pair[0].ring
                rest = [_project_into(q, ring) for q in ps]
                stack.append((sub, rest))
            if g2 is None:
                ok = False
                break
            g = g2
        if ok:
            out.append((g.ring.domain, g))
    return out, unverified


def _project_into(p: Polynomial, ring: PolyRing) -> Polynomial:
    src = p.ring.domain
    dst = ring.domain
    return ring.poly({e: src.project(dst, c) for e, c in p.terms.items()})


def _specialize_poly_x(p: Polynomial, u: str, v: str, dom, x0) -> Polynomial:
    ring = PolyRing(dom, (v,))
    iu, iv = p.ring.index[u], p.ring.index[v]
    terms = {}
    for e, c in p.terms.items():
        val = dom.coerce(c)
        if e[iu]:
            val = dom.mul(val, dom.pow(x0, e[iu]))
        key = (e[iv],)
        terms[key] = dom.add(terms.get(key, dom.zero), val) if key in terms else val
    return ring.poly(terms)


def _chart_point(chart: str, vals: dict) -> ProjectivePoint:
    coords = {chart: Fraction(1)}
    coords.update(vals)
    return ProjectivePoint([coords.get(n, Fraction(0)) for n in PROJ_VARS])


def _packet_chart_point(chart: str, dom, u0, v0) -> ProjectivePoint:
    u, v = CHART_COORDS[chart]
    vals = {chart: dom.one, u: u0, v: v0}
    return ProjectivePoint([vals[n] for n in PROJ_VARS], dom)


def _flex_search_infinity(F: Foliation, d: int, try_point, notes):
    """Candidates on the line z = 0 (points [1:y:0]) via the x = 1 chart."""
    gs, hs = iterated_field_values(F, "x", d)
    u, v = CHART_COORDS["x"]  # (y, z)
    dets = [gs[0] * hs[j] - hs[0] * gs[j] for j in range(1, d)]
    restricted = [p.eval_partial({v: 0}) for p in dets]
    g = None
    zero_line = True
    for p in restricted:
        if p.is_zero():
            continue
        zero_line = False
        g = p if g is None else poly_gcd(g, p)
        if g.is_constant():
            break
    if zero_line:
        for c in range(-6, 7):
            try_point(ProjectivePoint([1, Fraction(c), 0]))
        notes.append("restriction to the infinity line vanished; sampled (unverified)")
        return
    if g is None or g.is_constant():
        return
    coeffs = univariate_coeffs(g, u)
    for root, _m in rational_roots(coeffs):
        try_point(ProjectivePoint([1, Fraction(root), 0]))
    rem_sf, _ = _squarefree_upoly(coeffs)
    from .rings import upoly_divmod

    rem = list(rem_sf)
    for root, _m in rational_roots(rem_sf):
        fr = Fraction(root)
        rem = upoly_divmod(rem, [-fr.numerator, fr.denominator])[0]
    if len(rem) > 1:
        dom = QuotientDomain(rem)
        try_point(ProjectivePoint([dom.one, dom.generator(), dom.zero], dom))


def sigma2_membership(F: Foliation) -> dict:
    """Flex(F, d-1) nonempty?  A verified witness or an absence report."""
    res = maximal_flex_search(F)
    return {
        "member": res["found"],
        "witness": res["witnesses"][0] if res["witnesses"] else None,
        "certificate": res["certificate"],
        "notes": res["notes"],
    }


def u2_membership(F: Foliation) -> dict:
    """I_F transverse (no invariant part) and reduced."""
    div = inflection_divisor(F)
    inv, tr = decompose_divisor(F, div)
    reduced = div.is_reduced()
    return {
        "member": inv.degree == 0 and reduced,
        "transverse": inv.degree == 0,
        "reduced": reduced,
        "inv": inv,
        "tr": tr,
    }


def squarefree_mod_p(f: Polynomial, p: int) -> bool:
    """Squarefreeness of an integer polynomial after reduction mod p.

    A True answer certifies squarefreeness over Q provided the graded-lex
    leading coefficient survives the reduction (checked here).
    """
    dom = PrimeDomain(p)
    ring = PolyRing(dom, f.ring.vars)
    fi = f.to_integer_coeffs()
    _, lead = fi.lead()
    if int(lead) % p == 0:
        raise ValueError("leading coefficient vanishes mod p; reduction not faithful")
    fp = ring.poly({e: int(c) % p for e, c in fi.terms.items()})
    if fp.total_degree() != fi.total_degree():
        raise ValueError("degree drops mod p; reduction not faithful")
    _, flag = squarefree_part(fp)
    return flag

"""Foliations of the projective plane as primitive homogeneous 1-forms.

A degree-d foliation is stored as omega = a dx + b dy + c dz with a, b, c
homogeneous of degree d+1, gcd(a,b,c) = 1 and x*a + y*b + z*c = 0.
"""

from __future__ import annotations

from fractions import Fraction

from .polynomials import PolyRing, Polynomial, exact_div, poly_gcd_many
from .rings import QQ, normalize_rat, rat_int_content

PROJ_VARS = ("x", "y", "z")
PROJ_RING = PolyRing(QQ, PROJ_VARS)

# chart id -> (affine coordinate pair, variable set to 1)
CHART_COORDS = {"z": ("x", "y"), "x": ("y", "z"), "y": ("x", "z")}


def proj_ring(extra_params=()) -> PolyRing:
    return PolyRing(QQ, PROJ_VARS + tuple(extra_params))


class FoliationError(ValueError):
    pass


def proj_degree(p: Polynomial) -> int:
    """Total degree in the projective variables only (parameters not counted)."""
    if p.is_zero():
        return -1
    return max(e[0] + e[1] + e[2] for e in p.terms)


def proj_homogeneous(p: Polynomial) -> bool:
    return len({e[0] + e[1] + e[2] for e in p.terms}) <= 1


def _normalize_triple(a, b, c):
    """Joint projective normalization: coprime integer coefficients, fixed sign."""
    ring = a.ring
    polys = [a, b, c]
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise FoliationError("zero 1-form")
    g = poly_gcd_many(nonzero)
    if not g.is_constant():
        polys = [exact_div(p, g) if not p.is_zero() else p for p in polys]
        nonzero = [p for p in polys if not p.is_zero()]
    content = rat_int_content(v for p in nonzero for v in p.terms.values())
    first = next(p for p in polys if not p.is_zero())
    _, lead = first.lead()
    if lead < 0:
        content = -content
    inv = 1 / content
    out = []
    for p in polys:
        out.append(Polynomial(ring, {e: normalize_rat(v * inv) for e, v in p.terms.items()}))
    return tuple(out)


class Foliation:
    """A foliation of P^2, canonically normalized."""

    __slots__ = ("ring", "a", "b", "c", "degree", "_abc")

    def __init__(self, a: Polynomial, b: Polynomial, c: Polynomial, _skip_checks=False):
        ring = a.ring
        if tuple(ring.vars[:3]) != PROJ_VARS:
            raise FoliationError("ring must start with the projective variables x, y, z")
        if not _skip_checks:
            x, y, z = (ring.var(v) for v in PROJ_VARS)
            euler = x * a + y * b + z * c
            if not euler.is_zero():
                raise FoliationError("Euler relation x*a + y*b + z*c = 0 fails")
            degs = {proj_degree(p) for p in (a, b, c) if not p.is_zero()}
            if len(degs) != 1 or not all(proj_homogeneous(p) for p in (a, b, c)):
                raise FoliationError("coefficients must be homogeneous of a common degree")
            a, b, c = _normalize_triple(a, b, c)
        self.ring = ring
        self.a, self.b, self.c = a, b, c
        deg = max(proj_degree(p) for p in (a, b, c))
        if deg < 1:
            raise FoliationError("1-form coefficients must have degree >= 1")
        self.degree = deg - 1
        self._abc = None

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_affine(A: Polynomial, B: Polynomial, chart: str = "z") -> "Foliation":
        """Foliation defined by A du + B dv in the given affine chart."""
        from .polynomials import poly_gcd

        ring = A.ring
        if chart not in CHART_COORDS:
            raise FoliationError(f"unknown chart {chart!r}")
        if A.is_zero() and B.is_zero():
            raise FoliationError("zero 1-form")
        g = poly_gcd(A, B) if (A and B) else (A or B).normalized()
        if not g.is_constant():
            raise FoliationError(f"affine 1-form is not primitive; common factor {g.to_string()}")
        u, v = CHART_COORDS[chart]
        for p, name in ((A, "A"), (B, "B")):
            if p.degree_in(chart) > 0:
                raise FoliationError(f"{name} must not involve the chart variable {chart}")
        iu, iv, ic = ring.index[u], ring.index[v], ring.index[chart]
        D = max(e[iu] + e[iv] for p in (A, B) for e in p.terms)

        def pad(p):
            # homogenize in the chart coordinates only (parameters carry no weight)
            out = {}
            for e, cval in p.terms.items():
                out[e[:ic] + (D - e[iu] - e[iv],) + e[ic + 1 :]] = cval
            return Polynomial(ring, out)

        At = pad(A)
        Bt = pad(B)
        w = ring.var(chart)
        uu = ring.var(u)
        vv = ring.var(v)
        coeffs = {u: w * At, v: w * Bt, chart: -(uu * At + vv * Bt)}
        a = coeffs["x"] if "x" in coeffs else ring.zero()
        b = coeffs["y"] if "y" in coeffs else ring.zero()
        c = coeffs["z"] if "z" in coeffs else ring.zero()
        return Foliation(a, b, c)

    @staticmethod
    def from_abc(A: Polynomial, B: Polynomial, C: Polynomial) -> "Foliation":
        """Foliation from components in the alpha, beta, gamma basis."""
        ring = A.ring
        x, y, z = (ring.var(v) for v in PROJ_VARS)
        a = B * z - C * y
        b = C * x - A * z
        c = A * y - B * x
        return Foliation(a, b, c)

    # -- views -----------------------------------------------------------------

    def form(self) -> tuple:
        return (self.a, self.b, self.c)

    def abc_components(self) -> tuple:
        """The unique (A, B, C) with omega = A*alpha + B*beta + C*gamma, C free of z."""
        if self._abc is not None:
            return self._abc
        ring = self.ring
        x, y, z = (ring.var(v) for v in PROJ_VARS)
        b0 = self.b.eval_partial({"z": 0})
        a0 = self.a.eval_partial({"z": 0})
        if not b0.is_zero():
            C = exact_div(b0, x)
        elif not a0.is_zero():
            C = exact_div(-a0, y)
        else:
            C = ring.zero()
        if C is None:
            raise FoliationError("internal inconsistency extracting C")
        B = exact_div(self.a + C * y, z)
        A = exact_div(C * x - self.b, z)
        if A is None or B is None:
            raise FoliationError("internal inconsistency extracting A, B")
        if not (A * y - B * x - self.c).is_zero():
            raise FoliationError("internal inconsistency: reconstruction failed")
        self._abc = (A, B, C)
        return self._abc

    def dual_vector_field(self) -> tuple:
        """A degree-d homogeneous vector field (U, V, W) defining the foliation."""
        return self.abc_components()

    def affine_form(self, chart: str = "z") -> "AffineForm":
        """Primitive 1-form A du + B dv defining the foliation in a chart."""
        u, v = CHART_COORDS[chart]
        A = _restrict(self._coeff(u), chart)
        B = _restrict(self._coeff(v), chart)
        from .polynomials import poly_gcd

        if A.is_zero() and B.is_zero():
            raise FoliationError("foliation restricts to zero in this chart")
        if A and B:
            g = poly_gcd(A, B)
            if not g.is_constant():
                A = exact_div(A, g)
                B = exact_div(B, g)
        content = rat_int_content(v for p in (A, B) if p for v in p.terms.values())
        first = A if A else B
        _, lead = first.lead()
        if lead < 0:
            content = -content
        inv = 1 / content
        A = Polynomial(self.ring, {e: normalize_rat(v * inv) for e, v in A.terms.items()})
        B = Polynomial(self.ring, {e: normalize_rat(v * inv) for e, v in B.terms.items()})
        return AffineForm(chart, A, B)

    def vector_field(self, chart: str = "z") -> tuple:
        """Affine polynomial vector field (X1, X2) with i_X omega = 0 in the chart."""
        w = self.affine_form(chart)
        return (w.B, -w.A)

    def _coeff(self, var: str) -> Polynomial:
        return {"x": self.a, "y": self.b, "z": self.c}[var]

    # -- group action ------------------------------------------------------------

    def pullback_raw(self, phi: "ProjectiveMap") -> tuple:
        """Raw pullback coefficients (not normalized, possibly imprimitive)."""
        ring = self.ring
        params = tuple(v for v in phi.param_vars if v not in ring.index)
        target = ring.extended(params) if params else ring
        gens = [target.var(v) for v in PROJ_VARS]
        entries = [[phi.entry_poly(i, j, target) for j in range(3)] for i in range(3)]
        images = {}
        for j, name in enumerate(PROJ_VARS):
            images[name] = entries[j][0] * gens[0] + entries[j][1] * gens[1] + entries[j][2] * gens[2]
        comps = [p.map_into(target).compose(images, target) for p in (self.a, self.b, self.c)]
        new = []
        for col in range(3):
            acc = target.zero()
            for i in range(3):
                acc = acc + comps[i] * entries[i][col]
            new.append(acc)
        return tuple(new)

    def pullback(self, phi: "ProjectiveMap") -> "Foliation":
        a, b, c = self.pullback_raw(phi)
        fol = Foliation(a, b, c)
        if fol.degree != self.degree:
            raise FoliationError("degree changed under pullback; map is not invertible")
        return fol

    # -- predicates -----------------------------------------------------------

    def is_invariant_curve(self, C: Polynomial) -> bool:
        """Whether the curve C = 0 is invariant (omega wedge dC divisible by C)."""
        if C.is_zero():
            raise FoliationError("zero curve")
        if not C.is_homogeneous():
            raise FoliationError("curve must be homogeneous")
        C = C.map_into(self.ring) if C.ring != self.ring else C
        cx = C.derivative("x")
        cy = C.derivative("y")
        cz = C.derivative("z")
        comps = (
            self.a * cy - self.b * cx,
            self.a * cz - self.c * cx,
            self.b * cz - self.c * cy,
        )
        return all(w.is_zero() or exact_div(w, C) is not None for w in comps)

    def singular_scheme_is_finite(self) -> bool:
        g = poly_gcd_many([p for p in (self.a, self.b, self.c) if not p.is_zero()])
        return g.is_constant()

    def canonical_key(self) -> tuple:
        return (
            tuple(sorted(self.a.terms.items())),
            tuple(sorted(self.b.terms.items())),
            tuple(sorted(self.c.terms.items())),
        )

    def same_class(self, other: "Foliation") -> bool:
        return self.canonical_key() == other.canonical_key()

    def __eq__(self, other):
        return isinstance(other, Foliation) and self.same_class(other)

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return (
            f"Foliation(degree={self.degree}, "
            f"a={self.a.to_string()}, b={self.b.to_string()}, c={self.c.to_string()})"
        )


def _restrict(p: Polynomial, chart: str) -> Polynomial:
    return p.eval_partial({chart: 1})


class AffineForm:
    """Primitive 1-form A du + B dv in a named affine chart."""

    __slots__ = ("chart", "A", "B")

    def __init__(self, chart: str, A: Polynomial, B: Polynomial):
        self.chart = chart
        self.A = A
        self.B = B

    @property
    def coords(self) -> tuple:
        return CHART_COORDS[self.chart]

    def vector_field(self) -> tuple:
        return (self.B, -self.A)

    def __repr__(self):
        u, v = self.coords
        return f"({self.A.to_string()}) d{u} + ({self.B.to_string()}) d{v}  [chart {self.chart}=1]"


class ProjectiveMap:
    """Element of PGL3 with rational or polynomial (parameter) entries."""

    __slots__ = ("rows", "param_ring")

    def __init__(self, rows, param_ring: PolyRing = None):
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a projective map needs a 3x3 matrix")
        self.param_ring = param_ring
        norm = []
        for r in rows:
            out = []
            for v in r:
                if isinstance(v, Polynomial):
                    if param_ring is None:
                        self.param_ring = v.ring
                    out.append(v)
                else:
                    out.append(normalize_rat(Fraction(v) if not isinstance(v, int) else v))
            norm.append(tuple(out))
        self.rows = tuple(norm)

    @property
    def param_vars(self) -> tuple:
        return self.param_ring.vars if self.param_ring is not None else ()

    @staticmethod
    def identity() -> "ProjectiveMap":
        return ProjectiveMap([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @staticmethod
    def diagonal(d1, d2, d3) -> "ProjectiveMap":
        return ProjectiveMap([[d1, 0, 0], [0, d2, 0], [0, 0, d3]])

    def entry_poly(self, i: int, j: int, target: PolyRing) -> Polynomial:
        v = self.rows[i][j]
        if isinstance(v, Polynomial):
            return v.map_into(target)
        return target.const(v)

    def det(self):
        r = self.rows
        terms = [
            (r[0][0], r[1][1], r[2][2], 1),
            (r[0][1], r[1][2], r[2][0], 1),
            (r[0][2], r[1][0], r[2][1], 1),
            (r[0][2], r[1][1], r[2][0], -1),
            (r[0][0], r[1][2], r[2][1], -1),
            (r[0][1], r[1][0], r[2][2], -1),
        ]
        if self.param_ring is not None:
            ring = self.param_ring
            acc = ring.zero()
            for p, q, s, sg in terms:
                pp = p if isinstance(p, Polynomial) else ring.const(p)
                qq = q if isinstance(q, Polynomial) else ring.const(q)
                ss = s if isinstance(s, Polynomial) else ring.const(s)
                acc = acc + pp * qq * ss * ring.const(sg)
            return acc
        acc = 0
        for p, q, s, sg in terms:
            acc += Fraction(p) * Fraction(q) * Fraction(s) * sg
        return normalize_rat(acc)

    def compose(self, other: "ProjectiveMap") -> "ProjectiveMap":
        """Matrix product self . other (as maps: first other, then self)."""
        if self.param_ring is not None or other.param_ring is not None:
            raise NotImplementedError("composition implemented for numeric maps only")
        rows = []
        for i in range(3):
            rows.append([sum(Fraction(self.rows[i][k]) * Fraction(other.rows[k][j]) for k in range(3)) for j in range(3)])
        return ProjectiveMap(rows)

    def adjugate(self) -> "ProjectiveMap":
        """Projective inverse (no division needed)."""
        if self.param_ring is not None:
            raise NotImplementedError("adjugate implemented for numeric maps only")
        r = [[Fraction(v) for v in row] for row in self.rows]

        def minor(i, j):
            rs = [k for k in range(3) if k != i]
            cs = [k for k in range(3) if k != j]
            return r[rs[0]][cs[0]] * r[rs[1]][cs[1]] - r[rs[0]][cs[1]] * r[rs[1]][cs[0]]

        adj = [[(-1) ** (i + j) * minor(j, i) for j in range(3)] for i in range(3)]
        return ProjectiveMap(adj)

    def __repr__(self):
        return f"ProjectiveMap({self.rows!r})"


# ---------------------------------------------------------------------------
# Lie calculus in an affine chart
# ---------------------------------------------------------------------------


def lie_derivative(X: tuple, A: Polynomial, B: Polynomial, coords=("x", "y")) -> tuple:
    """L_X(A du + B dv) as a pair of coefficients (P, Q)."""
    u, v = coords
    X1, X2 = X

    def xf(f):
        return X1 * f.derivative(u) + X2 * f.derivative(v)

    P = xf(A) + A * X1.derivative(u) + B * X2.derivative(u)
    Q = xf(B) + A * X1.derivative(v) + B * X2.derivative(v)
    return P, Q


def wedge_lie(X: tuple, A: Polynomial, B: Polynomial, coords=("x", "y")) -> tuple:
    """(L_X omega, L_X omega wedge omega) for omega = A du + B dv.

    The wedge is returned as the single coefficient of du wedge dv.
    """
    P, Q = lie_derivative(X, A, B, coords)
    return (P, Q), P * B - Q * A


def rational_form_closed(P: Polynomial, Q: Polynomial, R: Polynomial, S: Polynomial, coords=("x", "y")) -> bool:
    """Whether (P/Q) du + (R/S) dv is a closed rational 1-form."""
    u, v = coords
    if Q.is_zero() or S.is_zero():
        raise ZeroDivisionError("zero denominator")
    lhs = (P.derivative(v) * Q - P * Q.derivative(v)) * S * S
    rhs = (R.derivative(u) * S - R * S.derivative(u)) * Q * Q
    return (lhs - rhs).is_zero()


def first_integral_check(H_num: Polynomial, H_den: Polynomial, A: Polynomial, B: Polynomial, coords=("x", "y")) -> bool:
    """Whether H = H_num/H_den is a first integral of A du + B dv (dH wedge omega = 0)."""
    u, v = coords
    hx = H_num.derivative(u) * H_den - H_num * H_den.derivative(u)
    hy = H_num.derivative(v) * H_den - H_num * H_den.derivative(v)
    return (hx * B - hy * A).is_zero()

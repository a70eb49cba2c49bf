"""Parser and printer for the plain-text polynomial / 1-form grammar.

Grammar (whitespace-insensitive):

    form     := expr [ '@' chart ]            chart in { x=1, y=1, z=1 }
    triple   := expr ';' expr ';' expr        homogeneous (a; b; c)
    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ['^' integer]
    base     := rational | identifier | '(' expr ')'
    rational := integer [ '/' integer ]

Identifiers are variable names; in 1-form context the symbols dx, dy, dz mark
the differential of each term.  The printer emits exactly this grammar, so
parse -> print -> parse is the identity on canonical text.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .foliation import CHART_COORDS, Foliation, PROJ_RING
from .polynomials import PolyRing, Polynomial
from .rings import QQ

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*)|([()+\-*/^@=;]))")

DIFFERENTIALS = ("dx", "dy", "dz")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        window = text[max(0, position - 20) : position + 20]
        super().__init__(f"{message} at position {position}: ...{window!r}...")
        self.position = position


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items = []  # (kind, value, position)
        pos = 0
        norm = text.replace("−", "-")
        while pos < len(norm):
            m = _TOKEN.match(norm, pos)
            if not m or m.end() == m.start():
                if norm[pos:].strip() == "":
                    break
                raise ParseError("unexpected character", pos, text)
            if m.group(1):
                self.items.append(("int", int(m.group(1)), m.start(1)))
            elif m.group(2):
                self.items.append(("name", m.group(2), m.start(2)))
            elif m.group(3):
                self.items.append(("op", "^", m.start(3)))
            else:
                self.items.append(("op", m.group(4), m.start(4)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.items[self.i] if self.i < len(self.items) else ("end", None, len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos, self.text)


def _parse_expr(tk: _Tokens, ring: PolyRing) -> Polynomial:
    acc = ring.zero()
    sign = 1
    kind, val, _ = tk.peek()
    if kind == "op" and val in "+-":
        tk.next()
        sign = -1 if val == "-" else 1
    acc = acc + _parse_term(tk, ring).scale(sign)
    while True:
        kind, val, _ = tk.peek()
        if kind == "op" and val in "+-":
            tk.next()
            t = _parse_term(tk, ring)
            acc = acc + t.scale(-1 if val == "-" else 1)
        else:
            return acc


def _parse_term(tk: _Tokens, ring: PolyRing) -> Polynomial:
    acc = _parse_factor(tk, ring)
    while True:
        kind, val, _ = tk.peek()
        if kind == "op" and val == "*":
            tk.next()
            acc = acc * _parse_factor(tk, ring)
        else:
            return acc


def _parse_factor(tk: _Tokens, ring: PolyRing) -> Polynomial:
    base = _parse_base(tk, ring)
    kind, val, _ = tk.peek()
    if kind == "op" and val == "^":
        tk.next()
        kind, n, pos = tk.next()
        if kind != "int":
            raise ParseError("expected integer exponent", pos, tk.text)
        return base**n
    return base


def _parse_base(tk: _Tokens, ring: PolyRing) -> Polynomial:
    kind, val, pos = tk.next()
    if kind == "int":
        k2, v2, _ = tk.peek()
        if k2 == "op" and v2 == "/":
            tk.next()
            k3, v3, p3 = tk.next()
            if k3 != "int":
                raise ParseError("expected integer denominator", p3, tk.text)
            return ring.const(Fraction(val, v3))
        return ring.const(val)
    if kind == "name":
        if val not in ring.index:
            raise ParseError(f"unknown variable {val!r}", pos, tk.text)
        return ring.var(val)
    if kind == "op" and val == "(":
        inner = _parse_expr(tk, ring)
        tk.expect_op(")")
        return inner
    if kind == "op" and val == "-":
        return -_parse_factor(tk, ring)
    raise ParseError("expected a value", pos, tk.text)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    tk = _Tokens(text)
    p = _parse_expr(tk, ring)
    kind, _, pos = tk.peek()
    if kind != "end":
        raise ParseError("trailing input", pos, text)
    return p


def parse_form(text: str) -> Foliation:
    """Parse an affine 1-form with optional chart tag, or a homogeneous triple."""
    if ";" in text:
        parts = text.split(";")
        if len(parts) != 3:
            raise ParseError("a homogeneous triple needs exactly three components", 0, text)
        a, b, c = (parse_polynomial(p, PROJ_RING) for p in parts)
        return Foliation(a, b, c)
    chart = "z"
    body = text
    if "@" in text:
        body, tag = text.rsplit("@", 1)
        tag = tag.strip().replace(" ", "")
        m = re.fullmatch(r"([xyz])=1", tag)
        if not m:
            raise ParseError("chart tag must be x=1, y=1 or z=1", text.rfind("@"), text)
        chart = m.group(1)
    ring = PolyRing(QQ, PROJ_RING.vars + DIFFERENTIALS)
    p = parse_polynomial(body, ring)
    coeffs = {}
    for dname in DIFFERENTIALS:
        i = ring.index[dname]
        sel = {}
        for e, c in p.terms.items():
            if e[i] == 1 and sum(e[ring.index[dn]] for dn in DIFFERENTIALS) == 1:
                sel[e[:i] + (0,) + e[i + 1 :]] = c
        coeffs[dname] = Polynomial(ring, sel).map_into(PROJ_RING)
    total_d = sum(1 for dn in DIFFERENTIALS for e in p.terms if e[ring.index[dn]] >= 1)
    plain = {e for e in p.terms if all(e[ring.index[dn]] == 0 for dn in DIFFERENTIALS)}
    deg2 = any(
        sum(e[ring.index[dn]] for dn in DIFFERENTIALS) > 1 or any(e[ring.index[dn]] > 1 for dn in DIFFERENTIALS)
        for e in p.terms
    )
    if plain or deg2:
        raise ParseError("every term must contain exactly one of dx, dy, dz (to the first power)", 0, text)
    u, v = CHART_COORDS[chart]
    du, dv = "d" + u, "d" + v
    dw = "d" + chart
    if not coeffs[dw].is_zero():
        raise ParseError(f"chart {chart}=1 forbids {dw} terms", 0, text)
    A, B = coeffs[du], coeffs[dv]
    for name, pol in (("A", A), ("B", B)):
        if pol.degree_in(chart) > 0:
            raise ParseError(f"{name} must not involve the chart variable {chart}", 0, text)
    from .foliation import FoliationError

    try:
        return Foliation.from_affine(A, B, chart)
    except FoliationError as e:
        raise ParseError(str(e), 0, text)


def print_polynomial(p: Polynomial) -> str:
    return p.to_string()


def print_form(F: Foliation, chart: str = "z") -> str:
    w = F.affine_form(chart)
    u, v = w.coords
    parts = []
    for pol, dname in ((w.A, "d" + u), (w.B, "d" + v)):
        if pol.is_zero():
            continue
        if pol.is_constant() or len(pol.terms) == 1:
            body = pol.to_string()
            if body == "1":
                parts.append(dname)
            elif body == "-1":
                parts.append(f"-{dname}")
            else:
                parts.append(f"{body}*{dname}")
        else:
            parts.append(f"({pol.to_string()})*{dname}")
    out = parts[0]
    for s in parts[1:]:
        out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return f"{out} @ {chart}=1"


def print_triple(F: Foliation) -> str:
    return "; ".join(p.to_string() for p in F.form())

"""Sparse multivariate polynomials over an exact coefficient domain.

Terms are stored as a dict from exponent tuples to nonzero coefficients; the
canonical term order is graded lexicographic in the declared variable order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .rings import QQ, QuotientDomain, normalize_rat, rat_int_content


class PolyRing:
    """A polynomial ring: a coefficient domain plus an ordered variable tuple."""

    __slots__ = ("domain", "vars", "index", "zero_exp")

    def __init__(self, domain, variables):
        self.domain = domain
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")
        self.index = {v: i for i, v in enumerate(self.vars)}
        self.zero_exp = (0,) * len(self.vars)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.domain == other.domain and self.vars == other.vars

    def __hash__(self):
        return hash((self.domain, self.vars))

    def __repr__(self):
        return f"{self.domain!r}[{','.join(self.vars)}]"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.zero_exp: self.domain.one})

    def const(self, c) -> "Polynomial":
        c = self.domain.coerce(c)
        if self.domain.is_zero(c):
            return self.zero()
        return Polynomial(self, {self.zero_exp: c})

    def var(self, name: str) -> "Polynomial":
        e = [0] * len(self.vars)
        e[self.index[name]] = 1
        return Polynomial(self, {tuple(e): self.domain.one})

    def gens(self):
        return tuple(self.var(v) for v in self.vars)

    def poly(self, terms: dict) -> "Polynomial":
        dom = self.domain
        clean = {}
        for e, c in terms.items():
            c = dom.coerce(c)
            if not dom.is_zero(c):
                clean[tuple(e)] = c
        return Polynomial(self, clean)

    def monomial(self, exps, coeff=1) -> "Polynomial":
        return self.poly({tuple(exps): coeff})

    def extended(self, extra_vars) -> "PolyRing":
        new = [v for v in extra_vars if v not in self.index]
        return PolyRing(self.domain, self.vars + tuple(new))


def grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic structure ----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        if not self.terms:
            return -1
        i = self.ring.index[var]
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring.zero_exp, self.ring.domain.zero)

    def variables_used(self) -> tuple:
        used = [False] * len(self.ring.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for i, v in enumerate(self.ring.vars) if used[i])

    def lead(self) -> tuple:
        """(exponent, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.domain.zero)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        self._check(other)
        dom = self.ring.domain
        res = dict(self.terms)
        for e, c in other.terms.items():
            if e in res:
                v = dom.add(res[e], c)
                if dom.is_zero(v):
                    del res[e]
                else:
                    res[e] = v
            else:
                res[e] = c
        return Polynomial(self.ring, res)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        self._check(other)
        dom = self.ring.domain
        res = dict(self.terms)
        for e, c in other.terms.items():
            if e in res:
                v = dom.sub(res[e], c)
                if dom.is_zero(v):
                    del res[e]
                else:
                    res[e] = v
            else:
                res[e] = dom.neg(c)
        return Polynomial(self.ring, res)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        dom = self.ring.domain
        return Polynomial(self.ring, {e: dom.neg(c) for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        dom = self.ring.domain
        mul = dom.mul
        add = dom.add
        is_zero = dom.is_zero
        res = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(map(int.__add__, e1, e2))
                v = mul(c1, c2)
                if e in res:
                    res[e] = add(res[e], v)
                else:
                    res[e] = v
        for e in [e for e, c in res.items() if is_zero(c)]:
            del res[e]
        return Polynomial(self.ring, res)

    __rmul__ = __mul__

    def scale(self, c):
        dom = self.ring.domain
        c = dom.coerce(c)
        if dom.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {e: dom.mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        acc = self.ring.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def derivative(self, var: str) -> "Polynomial":
        dom = self.ring.domain
        i = self.ring.index[var]
        res = {}
        for e, c in self.terms.items():
            k = e[i]
            if not k:
                continue
            v = dom.mul(c, dom.coerce(k))
            if dom.is_zero(v):
                continue
            e2 = e[:i] + (k - 1,) + e[i + 1 :]
            res[e2] = dom.add(res[e2], v) if e2 in res else v
        return Polynomial(self.ring, {e: c for e, c in res.items() if not dom.is_zero(c)})

    # -- substitution and evaluation ------------------------------------------

    def compose(self, images: dict, target_ring: PolyRing = None) -> "Polynomial":
        """Substitute polynomials for variables (unmapped variables map to themselves)."""
        if target_ring is None:
            target_ring = next(iter(images.values())).ring if images else self.ring
        tdom = target_ring.domain
        var_imgs = []
        for v in self.ring.vars:
            if v in images:
                img = images[v]
                if img.ring != target_ring:
                    raise ValueError("image ring mismatch")
                var_imgs.append(img)
            elif v in target_ring.index:
                var_imgs.append(target_ring.var(v))
            else:
                var_imgs.append(None)  # fails below only if actually used
        memo = {self.ring.zero_exp: target_ring.one()}

        def image_of(e):
            got = memo.get(e)
            if got is not None:
                return got
            stack = [e]
            while stack:
                cur = stack[-1]
                if cur in memo:
                    stack.pop()
                    continue
                i = next(k for k, x in enumerate(cur) if x)
                if var_imgs[i] is None:
                    raise ValueError(f"no image for variable {self.ring.vars[i]}")
                prev = cur[:i] + (cur[i] - 1,) + cur[i + 1 :]
                if prev in memo:
                    memo[cur] = memo[prev] * var_imgs[i]
                    stack.pop()
                else:
                    stack.append(prev)
            return memo[e]

        acc = target_ring.zero()
        for e, c in self.terms.items():
            acc = acc + image_of(e).scale(tdom.coerce(c))
        return acc

    def eval_all(self, values: dict):
        """Evaluate at a full point; returns a domain element."""
        dom = self.ring.domain
        vals = [dom.coerce(values[v]) for v in self.ring.vars]
        memo = {self.ring.zero_exp: dom.one}
        acc = dom.zero
        for e, c in self.terms.items():
            cur = memo.get(e)
            if cur is None:
                cur = dom.one
                for i, k in enumerate(e):
                    for _ in range(k):
                        cur = dom.mul(cur, vals[i])
                memo[e] = cur
            acc = dom.add(acc, dom.mul(c, cur))
        return acc

    def eval_partial(self, values: dict) -> "Polynomial":
        """Substitute domain elements for some variables, keeping the ring."""
        dom = self.ring.domain
        idx = {self.ring.index[v]: dom.coerce(c) for v, c in values.items()}
        res = {}
        for e, c in self.terms.items():
            v = c
            e2 = list(e)
            for i, val in idx.items():
                for _ in range(e[i]):
                    v = dom.mul(v, val)
                e2[i] = 0
            if dom.is_zero(v):
                continue
            key = tuple(e2)
            if key in res:
                v = dom.add(res[key], v)
                if dom.is_zero(v):
                    del res[key]
                    continue
            res[key] = v
        return Polynomial(self.ring, res)

    def map_into(self, ring: PolyRing) -> "Polynomial":
        """Re-express in another ring containing all used variables."""
        if ring == self.ring:
            return self
        pos = []
        for i, v in enumerate(self.ring.vars):
            pos.append(ring.index.get(v, -1))
        dom = ring.domain
        res = {}
        for e, c in self.terms.items():
            e2 = [0] * len(ring.vars)
            for i, k in enumerate(e):
                if k:
                    if pos[i] < 0:
                        raise ValueError(f"variable {self.ring.vars[i]} not in target ring")
                    e2[pos[i]] = k
            res[tuple(e2)] = dom.coerce(c)
        return Polynomial(ring, {e: c for e, c in res.items() if not dom.is_zero(c)})

    def homogenize(self, var: str, degree: int = None) -> "Polynomial":
        """Multiply each term by var^(degree - total degree)."""
        if degree is None:
            degree = self.total_degree()
        i = self.ring.index[var]
        if self.degree_in(var) > 0:
            raise ValueError("polynomial already involves the homogenization variable")
        res = {}
        for e, c in self.terms.items():
            k = degree - sum(e)
            if k < 0:
                raise ValueError("degree too small to homogenize")
            res[e[:i] + (k,) + e[i + 1 :]] = c
        return Polynomial(self.ring, res)

    # -- normalization over Q ------------------------------------------------

    def rat_content(self) -> Fraction:
        """Positive rational content (Q coefficients only)."""
        if self.ring.domain != QQ:
            raise ValueError("rational content needs Q coefficients")
        return rat_int_content(self.terms.values())

    def normalized(self) -> "Polynomial":
        """Scale to the canonical representative of the projective class.

        Over Q: integer coprime coefficients with positive graded-lex leading
        coefficient.  Over a prime field: monic leading coefficient.
        """
        if not self.terms:
            return self
        dom = self.ring.domain
        if dom == QQ:
            c = self.rat_content()
            _, lead = self.lead()
            if lead < 0:
                c = -c
            if c == 1:
                return self
            inv = 1 / c
            return Polynomial(self.ring, {e: normalize_rat(v * inv) for e, v in self.terms.items()})
        if getattr(dom, "is_field", False):
            _, lead = self.lead()
            inv = dom.invert(lead)
            return Polynomial(self.ring, {e: dom.mul(v, inv) for e, v in self.terms.items()})
        return self

    def to_integer_coeffs(self) -> "Polynomial":
        """Clear denominators (Q coefficients), keeping the sign."""
        if not self.terms:
            return self
        c = self.rat_content()
        inv = 1 / c
        return Polynomial(self.ring, {e: normalize_rat(v * inv) for e, v in self.terms.items()})

    # -- pretty printing -------------------------------------------------------

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        dom = self.ring.domain
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(self.ring.vars[i])
                elif k > 1:
                    factors.append(f"{self.ring.vars[i]}^{k}")
            cs = dom.to_string(c)
            if factors:
                if cs == "1":
                    body = "*".join(factors)
                elif cs == "-1":
                    body = "-" + "*".join(factors)
                else:
                    body = cs + "*" + "*".join(factors)
            else:
                body = cs
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return self.to_string()

    def _check(self, other):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")


# ---------------------------------------------------------------------------
# Division, gcd, resultants
# ---------------------------------------------------------------------------


def exact_div(f: Polynomial, g: Polynomial):
    """Exact quotient f/g, or None when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    ring = f.ring
    dom = ring.domain
    if f.is_zero():
        return ring.zero()
    ge, gc = g.lead()
    gc_inv = dom.invert(gc)
    q = {}
    rem = dict(f.terms)
    while rem:
        e = max(rem, key=grlex_key)
        c = rem[e]
        diff = tuple(map(int.__sub__, e, ge))
        if any(k < 0 for k in diff):
            return None
        co = dom.mul(c, gc_inv)
        q[diff] = co
        for e2, c2 in g.terms.items():
            key = tuple(map(int.__add__, diff, e2))
            v = dom.sub(rem.get(key, dom.zero), dom.mul(co, c2))
            if dom.is_zero(v):
                rem.pop(key, None)
            else:
                rem[key] = v
    return Polynomial(ring, q)


def divides(g: Polynomial, f: Polynomial) -> bool:
    return exact_div(f, g) is not None


def coeffs_in(f: Polynomial, var: str) -> dict:
    """Map from var-degree to coefficient polynomial (var removed from exponents)."""
    i = f.ring.index[var]
    out = {}
    for e, c in f.terms.items():
        k = e[i]
        e2 = e[:i] + (0,) + e[i + 1 :]
        bucket = out.setdefault(k, {})
        bucket[e2] = c
    return {k: Polynomial(f.ring, t) for k, t in out.items()}


def lead_coeff_in(f: Polynomial, var: str) -> Polynomial:
    d = f.degree_in(var)
    cs = coeffs_in(f, var)
    return cs[d]


def from_coeffs_in(ring: PolyRing, var: str, coeff_map: dict) -> Polynomial:
    i = ring.index[var]
    res = {}
    for k, p in coeff_map.items():
        for e, c in p.terms.items():
            res[e[:i] + (e[i] + k,) + e[i + 1 :]] = c
    return Polynomial(ring, res)


def pseudo_rem(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """prem(f, g): lc(g)^(deg f - deg g + 1) * f modulo g, in var."""
    ring = f.ring
    df = f.degree_in(var)
    dg = g.degree_in(var)
    if dg < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if df < dg:
        return f
    lcg = lead_coeff_in(g, var)
    xv = ring.var(var)
    n = df - dg + 1
    r = f
    while not r.is_zero():
        dr = r.degree_in(var)
        if dr < dg:
            break
        lcr = lead_coeff_in(r, var)
        r = lcg * r - lcr * g * xv ** (dr - dg)
        n -= 1
    if n > 0:
        r = lcg**n * r
    return r


def content_in(f: Polynomial, var: str) -> Polynomial:
    """Gcd of the coefficients of f viewed in (R[others])[var]."""
    cs = sorted(coeffs_in(f, var).values(), key=lambda p: len(p.terms))
    g = cs[0]
    for c in cs[1:]:
        g = poly_gcd(g, c)
        if g.is_constant():
            break
    return g.normalized()


def primitive_in(f: Polynomial, var: str) -> Polynomial:
    c = content_in(f, var)
    if c.is_constant():
        return f.normalized()
    q = exact_div(f, c)
    return q.normalized()


def _int_upoly_gcd(a: list, b: list) -> list:
    """Primitive gcd of two integer coefficient lists (dense, index = exponent)."""
    from math import gcd as _g

    def content(c):
        out = 0
        for v in c:
            out = _g(out, v)
            if out == 1:
                return 1
        return out or 1

    def prim(c):
        ct = content(c)
        return [v // ct for v in c] if ct > 1 else list(c)

    def trim(c):
        while c and not c[-1]:
            c.pop()
        return c

    a = prim(trim(list(a)))
    b = prim(trim(list(b)))
    if len(a) < len(b):
        a, b = b, a
    while b:
        # pseudo-remainder of a by b, primitive at each step
        r = list(a)
        lb = b[-1]
        while True:
            while r and not r[-1]:
                r.pop()
            if len(r) < len(b):
                break
            k = len(r) - len(b)
            lr = r[-1]
            r = [v * lb for v in r]
            for i in range(len(b) - 1):
                r[k + i] -= lr * b[i]
            r.pop()
        a, b = b, prim(r)
    if a and a[-1] < 0:
        a = [-v for v in a]
    return a


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Multivariate gcd over Q or F_p by primitive pseudo-remainder sequences."""
    ring = f.ring
    dom = ring.domain
    if isinstance(dom, QuotientDomain):
        raise ValueError("gcd is not supported over quotient-ring coefficients")
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    f = f.normalized()
    g = g.normalized()
    used = set(f.variables_used()) | set(g.variables_used())
    if not used:
        return ring.one()
    if len(used) == 1 and dom == QQ:
        v = next(iter(used))
        i = ring.index[v]
        fa = [0] * (f.degree_in(v) + 1)
        ga = [0] * (g.degree_in(v) + 1)
        ok = True
        for e, c in f.terms.items():
            if type(c) is not int:
                ok = False
                break
            fa[e[i]] = c
        if ok:
            for e, c in g.terms.items():
                if type(c) is not int:
                    ok = False
                    break
                ga[e[i]] = c
        if ok:
            res = _int_upoly_gcd(fa, ga)
            return Polynomial(ring, {tuple(k if j == i else 0 for j in range(len(ring.vars))): c for k, c in enumerate(res) if c})
    var = min(used, key=lambda v: (min(max(f.degree_in(v), 0), max(g.degree_in(v), 0)), ring.index[v]))
    cf = content_in(f, var)
    cg = content_in(g, var)
    cont = poly_gcd(cf, cg)
    a = exact_div(f, cf)
    b = exact_div(g, cg)
    if a.degree_in(var) < b.degree_in(var):
        a, b = b, a
    while True:
        if b.is_zero():
            res = primitive_in(a, var)
            break
        if b.degree_in(var) == 0:
            res = ring.one()
            break
        r = pseudo_rem(a, b, var)
        a, b = b, (primitive_in(r, var) if not r.is_zero() else ring.zero())
    return (cont * res).normalized()


def poly_gcd_many(polys) -> Polynomial:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of all-zero family")
    g = polys[0].normalized()
    for p in polys[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, p)
    return g


def resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Sylvester resultant eliminating var, by the subresultant PRS."""
    ring = f.ring
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of zero polynomial")
    m = f.degree_in(var)
    n = g.degree_in(var)
    if m == 0 and n == 0:
        return ring.one()
    sign = 1
    if m < n:
        f, g, m, n = g, f, n, m
        if (m * n) % 2:
            sign = -sign
    if n == 0:
        return g**m * ring.const(sign)
    a, b = f, g
    gg = ring.one()
    h = ring.one()
    while True:
        da = a.degree_in(var)
        db = b.degree_in(var)
        if da % 2 and db % 2:
            sign = -sign
        delta = da - db
        r = pseudo_rem(a, b, var)
        a = b
        denom = gg * h**delta
        b = r if r.is_zero() else exact_div(r, denom)
        if b is None:
            raise ArithmeticError("subresultant division failed")
        if b.is_zero():
            return ring.zero()
        gg = lead_coeff_in(a, var)
        if delta >= 1:
            h = exact_div(gg**delta, h ** (delta - 1))
        elif delta == 0:
            pass
        if b.degree_in(var) == 0:
            da = a.degree_in(var)
            lead = b  # constant in var
            res = exact_div(lead**da, h ** (da - 1)) if da > 1 else lead**da
            if res is None:
                raise ArithmeticError("subresultant correction failed")
            return res * ring.const(sign)


def squarefree_part(f: Polynomial) -> tuple:
    """(squarefree part, flag); flag is True iff f has no repeated factor.

    Uses the joint gcd of f with all its partial derivatives.  Over F_p the
    flag is reliable; the returned part can omit p-th power factors.
    """
    if f.is_zero():
        raise ValueError("squarefree part of zero")
    used = f.variables_used()
    if not used:
        return f.ring.one(), True
    g = f.normalized()
    acc = None
    for v in used:
        d = f.derivative(v)
        if d.is_zero():
            acc = g if acc is None else acc
            continue
        acc = poly_gcd(g, d) if acc is None else poly_gcd(acc, d)
        if acc.is_constant():
            return g, True
    if acc is None or acc.is_constant():
        return g, True
    part = exact_div(g, acc)
    return part.normalized(), False


# ---------------------------------------------------------------------------
# Rational roots and linear factors
# ---------------------------------------------------------------------------


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        f = lambda z: (z * z + c) % n
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = int_gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"factorization failed for {n}")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def int_factorization(n: int) -> dict:
    """Prime factorization of |n| (n nonzero)."""
    n = abs(n)
    if n == 0:
        raise ValueError("factorization of 0")
    out = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = 1
        k = 17
        while d == 1 and k * k <= m and k < 100000:
            if m % k == 0:
                d = k
            k += 2
        if d == 1:
            d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def int_divisors(n: int) -> list:
    fac = int_factorization(n)
    divs = [1]
    for p, e in fac.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(coeffs: list) -> list:
    """All rational roots (with multiplicity) of a univariate Q-polynomial."""
    from .rings import upoly_divmod, upoly_trim

    c = upoly_trim([normalize_rat(v) for v in coeffs])
    if not c:
        raise ValueError("zero polynomial")
    roots = []
    k = 0
    while not c[0]:
        c = c[1:]
        k += 1
    if k:
        roots.append((0, k))
    if len(c) <= 1:
        return roots
    content = rat_int_content(c)
    ints = [int(v / content) for v in [Fraction(x) for x in c]]
    lead = abs(ints[-1])
    tail = abs(ints[0])
    seen = set()
    for p in int_divisors(tail):
        for q in int_divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                seen.add(cand)
                acc = 0
                for v in reversed(ints):
                    acc = acc * cand + v
                if acc == 0:
                    mult = 0
                    cur = list(ints)
                    while True:
                        q2, r = upoly_divmod(cur, [-cand.numerator, cand.denominator])
                        if r:
                            break
                        mult += 1
                        cur = q2
                    roots.append((normalize_rat(cand), mult))
    roots.sort(key=lambda t: (Fraction(t[0]).numerator, Fraction(t[0]).denominator))
    return roots


def univariate_coeffs(f: Polynomial, var: str) -> list:
    """Dense coefficient list of a polynomial involving only var."""
    i = f.ring.index[var]
    for e in f.terms:
        if any(k and j != i for j, k in enumerate(e)):
            raise ValueError("polynomial is not univariate in " + var)
    out = [0] * (f.degree_in(var) + 1 if f.terms else 0)
    for e, c in f.terms.items():
        out[e[i]] = c
    return out


def binary_linear_factors(f: Polynomial, u: str, v: str) -> tuple:
    """Rational linear factors of a binary form in (u, v).

    Returns ([(line, multiplicity), ...], cofactor) with lines normalized to
    primitive integer coefficients and positive leading coefficient.
    """
    ring = f.ring
    if f.is_zero():
        raise ValueError("zero form")
    iu, iv = ring.index[u], ring.index[v]
    factors = []
    rem = f
    # powers of the coordinate lines first
    for var, idx in ((u, iu), (v, iv)):
        k = min(e[idx] for e in rem.terms)
        if k:
            factors.append((ring.var(var), k))
            rem = Polynomial(ring, {e[:idx] + (e[idx] - k,) + e[idx + 1 :]: c for e, c in rem.terms.items()})
    if rem.is_constant():
        return factors, rem.normalized()
    g = rem.eval_partial({v: 1})
    coeffs = univariate_coeffs(g, u)
    for root, mult in rational_roots(coeffs):
        r = Fraction(root)
        line = (ring.var(u) * r.denominator - ring.const(r.numerator) * ring.var(v)).normalized()
        factors.append((line, mult))
        for _ in range(mult):
            rem = exact_div(rem, line)
    return factors, rem.normalized()


def linear_homogeneous_factors(f: Polynomial, vars3=("x", "y", "z")) -> tuple:
    """Degree-1 rational factors of a homogeneous polynomial in three variables.

    Candidates come from the rational roots of the three coordinate-plane
    restrictions; each is confirmed by exact division.  Returns
    ([(line, multiplicity), ...], cofactor, cofactor_has_no_rational_line).
    """
    ring = f.ring
    if not f.is_homogeneous():
        raise ValueError("linear factor search needs a homogeneous input")
    x, y, z = vars3
    rem = f
    found = []

    def strip(line):
        nonlocal rem
        mult = 0
        while True:
            q = exact_div(rem, line)
            if q is None:
                break
            rem = q
            mult += 1
        if mult:
            found.append((line.normalized(), mult))

    for v in vars3:
        strip(ring.var(v))
    if not rem.is_constant():
        # a line p*x+q*y+r*z dividing rem also divides each coordinate restriction,
        # so candidates come from the binary factors of the three restrictions
        candidates = []
        p_over_r = []
        q_over_r = []
        for kept, dropped in (((x, y), z), ((x, z), y), ((y, z), x)):
            restr = rem.eval_partial({dropped: 0})
            if restr.is_zero() or restr.is_constant():
                continue
            for line, _ in binary_linear_factors(restr, *kept)[0]:
                candidates.append(line)
                cz = line.coefficient(_unit_exp(ring, z))
                if dropped == y and cz:
                    cx = line.coefficient(_unit_exp(ring, x))
                    if cx:
                        p_over_r.append(Fraction(cx) / Fraction(cz))
                if dropped == x and cz:
                    cy = line.coefficient(_unit_exp(ring, y))
                    if cy:
                        q_over_r.append(Fraction(cy) / Fraction(cz))
        for p in p_over_r:
            for q in q_over_r:
                candidates.append(ring.const(p) * ring.var(x) + ring.const(q) * ring.var(y) + ring.var(z))
        for line in candidates:
            strip(line.normalized())
    cofactor = rem.normalized()
    irrational_possible = not cofactor.is_constant()
    return found, cofactor, irrational_possible


def _unit_exp(ring: PolyRing, var: str) -> tuple:
    e = [0] * len(ring.vars)
    e[ring.index[var]] = 1
    return tuple(e)

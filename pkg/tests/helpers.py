import random

from planefol.polynomials import PolyRing, Polynomial


def random_poly(rng: random.Random, ring: PolyRing, degree: int, terms: int, coeff_bound: int = 5) -> Polynomial:
    out = {}
    n = len(ring.vars)
    for _ in range(terms):
        exps = [0] * n
        budget = rng.randint(0, degree)
        for _ in range(budget):
            exps[rng.randrange(n)] += 1
        c = 0
        while c == 0:
            c = rng.randint(-coeff_bound, coeff_bound)
        out[tuple(exps)] = out.get(tuple(exps), 0) + c
    return ring.poly(out)


def random_homogeneous(rng: random.Random, ring: PolyRing, degree: int, coeff_bound: int = 5) -> Polynomial:
    out = {}
    n = len(ring.vars)

    def monos(d, k):
        if k == 1:
            yield (d,)
            return
        for i in range(d + 1):
            for rest in monos(d - i, k - 1):
                yield (i,) + rest

    for e in monos(degree, n):
        c = rng.randint(-coeff_bound, coeff_bound)
        if c:
            out[e] = c
    return ring.poly(out)

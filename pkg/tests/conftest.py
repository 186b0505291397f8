"""Shared deterministic generators for randomized exact-arithmetic tests."""

from __future__ import annotations

import random
from fractions import Fraction

from jetspace.laurent import LaurentPoly, monomials_of_degree
from jetspace.weyl import WeylElement


def random_graded_operator(rng: random.Random, nvars: int, degree: int,
                           max_order: int, max_terms: int = 3) -> WeylElement:
    """A graded Weyl element of the given x-degree with order <= max_order."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        k_min = max(0, -degree)
        if k_min > max_order:
            raise ValueError("no monomials with this degree under the order cap")
        k = rng.randint(k_min, max_order)
        beta = random_composition(rng, nvars, k)
        alpha = random_composition(rng, nvars, k + degree)
        coeff = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        key = (alpha, beta)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    terms = {k: c for k, c in terms.items() if c}
    if not terms:
        k = max(0, -degree)
        beta = (k,) + (0,) * (nvars - 1)
        alpha = (k + degree,) + (0,) * (nvars - 1)
        terms = {(alpha, beta): Fraction(1)}
    return WeylElement(nvars, terms)


def random_composition(rng: random.Random, nvars: int, total: int) -> tuple[int, ...]:
    out = [0] * nvars
    for _ in range(total):
        out[rng.randrange(nvars)] += 1
    return tuple(out)


def random_polynomial(rng: random.Random, nvars: int, max_degree: int,
                      max_terms: int = 4) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, max_degree)
        options = monomials_of_degree(nvars, deg)
        e = options[rng.randrange(len(options))]
        terms[e] = terms.get(e, Fraction(0)) + Fraction(rng.randint(-4, 4))
    return LaurentPoly(nvars, terms)

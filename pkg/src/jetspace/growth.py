"""Dimension growth of global operator spaces in the order bound N.

Raising the order bound from N-1 to N adds the global sections of the N-th
symmetric tangent twist, once N clears a finite threshold M.  Summing those
increments against the Euler characteristic gives a closed polynomial

    P(N) = binom(n+N, N) * chi(O(b-a+N)) + C,

of degree exactly 2n in N with leading coefficient 1/(n!)^2, whose constant
C is pinned by matching the computed dimension at N = M.  This module finds
the threshold empirically, builds P with exact rational coefficients, and
re-verifies the computed dimensions against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .cohomology import chi_line, chi_sym_tangent, h0_line, h0_sym_tangent
from .errors import PreconditionError, StabilizationError
from .presented import UniPoly
from .projective import do_dimension


def default_n_max(n: int) -> int:
    """Sweep budget per projective dimension; override per call if needed."""
    return {1: 4, 2: 4}.get(n, 2)


def expected_delta(n: int, order: int, d: int) -> int:
    """h^0 of the order-th symmetric tangent twist by d, the predicted
    dimension increment.  On the projective line Sym^N T = O(2N)."""
    if order < 1:
        raise PreconditionError("increments are defined for N >= 1")
    if n == 1:
        return h0_line(1, 2 * order + d)
    return h0_sym_tangent(n, order, d).h0


@dataclass(frozen=True)
class GrowthRow:
    order: int
    dim: int
    delta: int | None
    expected_delta: int | None
    match: bool | None


@dataclass(frozen=True)
class GrowthTable:
    n: int
    a: int
    b: int
    rows: tuple[GrowthRow, ...]
    threshold: int


@dataclass(frozen=True)
class GrowthPolynomial:
    """P(N) = binom(n+N, N) chi(O(b-a+N)) + C, with C pinned at N = threshold."""

    n: int
    a: int
    b: int
    threshold: int
    constant: Fraction
    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, order: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * order + c
        return acc


def _binomial_factor(n: int, shift: int) -> UniPoly:
    """binom(n + N + shift, n) as a polynomial in N, over Q."""
    poly = UniPoly.one()
    for i in range(1, n + 1):
        poly = poly * UniPoly((shift + i, 1))
    return poly * Fraction(1, factorial(n))


def dimension_sweep(n: int, a: int, b: int, n_max: int) -> list[int]:
    if n_max < 0:
        raise PreconditionError("sweep budget must be nonnegative")
    return [do_dimension(n, a, b, order) for order in range(n_max + 1)]


def stabilization_threshold(n: int, a: int, b: int, n_max: int,
                            dims: list[int] | None = None) -> int:
    """Least M < n_max such that every later increment matches the symmetric
    tangent prediction.  The vacuous M = n_max is rejected so a sweep with no
    matching increments fails loudly."""
    if n_max < 1:
        raise PreconditionError("threshold search needs n_max >= 1")
    if dims is None:
        dims = dimension_sweep(n, a, b, n_max)
    d = b - a
    matches = [dims[order] - dims[order - 1] == expected_delta(n, order, d)
               for order in range(1, n_max + 1)]
    for threshold in range(n_max):
        if all(matches[threshold:]):
            return threshold
    raise StabilizationError(
        f"no stabilization threshold below {n_max} for (n={n}, a={a}, b={b})")


def growth_polynomial(n: int, a: int, b: int, threshold: int,
                      dim_at_threshold: int | None = None) -> GrowthPolynomial:
    if dim_at_threshold is None:
        dim_at_threshold = do_dimension(n, a, b, threshold)
    product = _binomial_factor(n, 0) * _binomial_factor(n, b - a)
    constant = Fraction(dim_at_threshold) - product.evaluate(threshold)
    coeffs = list(product.coeffs)
    coeffs[0] += constant
    poly = GrowthPolynomial(n=n, a=a, b=b, threshold=threshold,
                            constant=constant, coeffs=tuple(coeffs))
    if poly.degree != 2 * n:
        raise StabilizationError("growth polynomial degenerated below degree 2n")
    return poly


@dataclass(frozen=True)
class GrowthReport:
    table: GrowthTable
    polynomial: GrowthPolynomial
    verdict: bool
    first_failure: int | None


def verify_growth(n: int, a: int, b: int, n_max: int | None = None) -> GrowthReport:
    """Sweep dimensions, locate the threshold, and check them against P(N).

    The verdict also folds in the polynomial degree (exactly 2n), the leading
    coefficient 1/(n!)^2, and the increment identity P(N) - P(N-1) =
    chi(Sym^N T(b-a)) past the threshold.
    """
    if n_max is None:
        n_max = default_n_max(n)
    dims = dimension_sweep(n, a, b, n_max)
    threshold = stabilization_threshold(n, a, b, n_max, dims)
    poly = growth_polynomial(n, a, b, threshold, dims[threshold])
    d = b - a
    rows = [GrowthRow(order=0, dim=dims[0], delta=None, expected_delta=None, match=None)]
    for order in range(1, n_max + 1):
        delta = dims[order] - dims[order - 1]
        expected = expected_delta(n, order, d)
        rows.append(GrowthRow(order=order, dim=dims[order], delta=delta,
                              expected_delta=expected, match=delta == expected))
    first_failure = None
    for order in range(threshold + 1, n_max + 1):
        if poly.evaluate(order) != dims[order]:
            first_failure = order
            break
    lead_ok = poly.coeffs[-1] == Fraction(1, factorial(n) ** 2)
    degree_ok = poly.degree == 2 * n
    increments_ok = all(
        poly.evaluate(order) - poly.evaluate(order - 1) == chi_sym_tangent(n, order, d)
        for order in range(max(threshold, 1) + 1, n_max + 1)) if n >= 1 else True
    closed_form_ok = all(
        dims[order] == dims[threshold]
        + comb(n + order, order) * chi_line(n, d + order)
        - comb(n + threshold, threshold) * chi_line(n, d + threshold)
        for order in range(threshold + 1, n_max + 1))
    verdict = (first_failure is None and lead_ok and degree_ok
               and increments_ok and closed_form_ok)
    table = GrowthTable(n=n, a=a, b=b, rows=tuple(rows), threshold=threshold)
    return GrowthReport(table=table, polynomial=poly, verdict=verdict,
                        first_failure=first_failure)

"""Truncated jets over affine polynomial and univariate coordinate rings.

A JetElement of order N in m variables lives in k[x_1..x_m, dx_1..dx_m]
with every monomial of total dx-degree > N discarded.  The universal
derivation sends f to f(x + dx) truncated; it is multiplicative because
truncation is an ideal-quotient operation.

Jets of finitely presented modules over Q[t] are computed through the
prolonged presentation: each relation p(t) becomes the family of columns
dt^s * p(t + dt), expanded over the dt-power basis and truncated, which is
exactly what taking jets of a cokernel presentation yields (jets preserve
cokernels).

The operator/jet dictionary: an order-N operator D = sum c_beta(x) d^beta
corresponds to the module map determined on the dx-power basis by
dx^beta -> beta! * c_beta(x); composing with the universal derivation
recovers the action of D.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import PreconditionError
from .laurent import Exponent, LaurentPoly, monomials_of_degree
from .linalg import ExactMatrix
from .presented import PresentedModule, UniPoly
from .weyl import WeylElement


class JetElement:
    """Polynomial in x and dx, truncated past dx-order N."""

    __slots__ = ("m", "order", "poly")

    def __init__(self, m: int, order: int, poly: LaurentPoly):
        if poly.nvars != 2 * m:
            raise ValueError("jet polynomial must have 2m variables (x then dx)")
        if order < 0:
            raise ValueError("jet order must be nonnegative")
        self.m = m
        self.order = order
        self.poly = _truncate(poly, m, order)

    @classmethod
    def zero(cls, m: int, order: int) -> "JetElement":
        return cls(m, order, LaurentPoly.zero(2 * m))

    @classmethod
    def from_polynomial(cls, f: LaurentPoly, order: int) -> "JetElement":
        """Embed f(x) as a jet with no dx part."""
        m = f.nvars
        terms = {tuple(e) + (0,) * m: c for e, c in f.terms.items()}
        return cls(m, order, LaurentPoly(2 * m, terms))

    def dx_part(self, k: Exponent) -> LaurentPoly:
        """Coefficient of dx^k as a polynomial in x."""
        m = self.m
        out = {}
        for e, c in self.poly.terms.items():
            if e[m:] == tuple(k):
                out[e[:m]] = c
        return LaurentPoly(m, out)

    def __add__(self, other: "JetElement") -> "JetElement":
        self._check(other)
        return JetElement(self.m, self.order, self.poly + other.poly)

    def __sub__(self, other: "JetElement") -> "JetElement":
        self._check(other)
        return JetElement(self.m, self.order, self.poly - other.poly)

    def __neg__(self) -> "JetElement":
        return JetElement(self.m, self.order, -self.poly)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return JetElement(self.m, self.order, self.poly * other)
        if not isinstance(other, JetElement):
            return NotImplemented
        self._check(other)
        return JetElement(self.m, self.order, self.poly * other.poly)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetElement):
            return NotImplemented
        return (self.m, self.order, self.poly) == (other.m, other.order, other.poly)

    def __hash__(self):
        return hash((self.m, self.order, self.poly))

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def _check(self, other: "JetElement") -> None:
        if self.m != other.m or self.order != other.order:
            raise ValueError("jet shape mismatch")

    def __repr__(self) -> str:
        return f"JetElement(m={self.m}, order={self.order}, {self.poly!r})"


def _truncate(poly: LaurentPoly, m: int, order: int) -> LaurentPoly:
    out = {e: c for e, c in poly.terms.items() if sum(e[m:]) <= order}
    if len(out) == len(poly.terms):
        return poly
    res = LaurentPoly.__new__(LaurentPoly)
    res.nvars = poly.nvars
    res.terms = out
    return res


def universal_derivation(f: LaurentPoly, order: int) -> JetElement:
    """f |-> f(x + dx) truncated past dx-order N; multiplicative by design."""
    if f.has_negative_exponent():
        raise PreconditionError("universal derivation is defined for polynomials only")
    m = f.nvars
    out: dict[Exponent, Fraction] = {}
    for gamma, c in f.terms.items():
        for k in _sub_multiindices(gamma, order):
            w = 1
            for g, kj in zip(gamma, k):
                if kj:
                    w *= comb(g, kj)
            target = tuple(g - kj for g, kj in zip(gamma, k)) + k
            coeff = c * w
            acc = out.get(target)
            if acc is None:
                out[target] = coeff
            else:
                out[target] = acc + coeff
    return JetElement(m, order, LaurentPoly(2 * m, out))


def _sub_multiindices(gamma: Exponent, cap: int):
    """All k with 0 <= k <= gamma componentwise and |k| <= cap."""
    m = len(gamma)

    def rec(i: int, budget: int, prefix: tuple[int, ...]):
        if i == m:
            yield prefix
            return
        for v in range(min(gamma[i], budget) + 1):
            yield from rec(i + 1, budget - v, prefix + (v,))

    yield from rec(0, cap, ())


def jet_free_rank(m: int, order: int, rank: int = 1) -> int:
    """Rank of the order-N jet module of a free rank-r module over m variables."""
    if m < 0 or order < 0 or rank < 0:
        raise PreconditionError("jet_free_rank arguments must be nonnegative")
    return rank * comb(m + order, order)


def jet_of_presented(module: PresentedModule, order: int) -> PresentedModule:
    """Jet module of coker(R) over Q[t], via the prolonged presentation.

    Generators are (original generator, dt-layer) pairs; the relation column
    for (original column, shift s) is dt^s * p(t + dt) truncated, expanded
    over the dt-power basis.
    """
    if order < 0:
        raise PreconditionError("jet order must be nonnegative")
    g, r = module.gens, module.relation_count
    layers = order + 1
    zero = UniPoly.zero()
    new_rels = [[zero] * (r * layers) for _ in range(g * layers)]
    for i in range(g):
        for c in range(r):
            p = module.relations[i][c]
            if not p:
                continue
            taylor = p.shift_coefficients()
            for s in range(layers):
                col = c * layers + s
                for k, q in enumerate(taylor):
                    if s + k >= layers:
                        break
                    if q:
                        new_rels[i * layers + s + k][col] = q
    return PresentedModule(g * layers, new_rels)


def operator_to_jet_map(op: WeylElement, order: int) -> dict[Exponent, LaurentPoly]:
    """The values of the corresponding jet-module map on the dx-power basis.

    Returns beta -> beta! * c_beta(x) for every derivative exponent beta of
    the operator; absent keys act as zero.
    """
    op_order = op.order()
    if op_order is not None and op_order > order:
        raise PreconditionError(f"operator order {op_order} exceeds jet order {order}")
    m = op.nvars
    values: dict[Exponent, dict[Exponent, Fraction]] = {}
    for (alpha, beta), c in op.terms.items():
        fact = 1
        for b in beta:
            fact *= factorial(b)
        values.setdefault(beta, {})[alpha] = c * fact
    return {beta: LaurentPoly(m, terms) for beta, terms in values.items()}


def evaluate_jet_map(values: dict[Exponent, LaurentPoly], jet: JetElement) -> LaurentPoly:
    """Apply a module map given on the dx-power basis to a jet, x-linearly."""
    m = jet.m
    out = LaurentPoly.zero(m)
    grouped: dict[Exponent, dict[Exponent, Fraction]] = {}
    for e, c in jet.poly.terms.items():
        grouped.setdefault(e[m:], {})[e[:m]] = c
    for k, xterms in grouped.items():
        target = values.get(k)
        if target is None or target.is_zero():
            continue
        out = out + LaurentPoly(m, xterms) * target
    return out


def do_jet_correspondence_check(op: WeylElement, order: int,
                                testset: list[LaurentPoly] | None = None) -> bool:
    """Exact check that factoring through the universal derivation recovers D.

    For every f in the testset, the jet-module map associated to D applied
    to the universal derivation of f must equal D(f).  Defaults to all
    monomials of total degree <= 3.
    """
    values = operator_to_jet_map(op, order)
    m = op.nvars
    if testset is None:
        testset = [LaurentPoly.monomial(e) for deg in range(4)
                   for e in monomials_of_degree(m, deg)]
    for f in testset:
        via_jets = evaluate_jet_map(values, universal_derivation(f, order))
        if via_jets != op.apply(f):
            return False
    return True


@dataclass(frozen=True)
class SymbolQuotientResult:
    ok: bool
    dimension: int

    def __bool__(self) -> bool:
        return self.ok


def symbol_quotient_check(m: int, order: int) -> SymbolQuotientResult:
    """Verify the top graded piece of the order filtration is free on d^beta.

    The pure derivative monomials of order exactly N must stay independent
    after quotienting by lower-order operators, and their count must be
    binom(m + N - 1, N).  Independence is certified by the action on the
    degree-N monomials (the pairing matrix is invertible) together with the
    normal-form order of an arbitrary combination.
    """
    if m < 1 or order < 1:
        raise PreconditionError("symbol quotient check needs m >= 1, N >= 1")
    betas = monomials_of_degree(m, order)
    expected = comb(m + order - 1, order)
    if len(betas) != expected:
        return SymbolQuotientResult(False, expected)
    gammas = betas
    col_index = {g: j for j, g in enumerate(gammas)}
    entries = {}
    for i, beta in enumerate(betas):
        op = WeylElement.monomial((0,) * m, beta)
        if op.order() != order:
            return SymbolQuotientResult(False, expected)
        for gamma in gammas:
            image = op.apply_monomial(gamma)
            const = image.get((0,) * m)
            if const:
                entries[(i, col_index[gamma])] = const
    pairing = ExactMatrix(len(betas), len(gammas), entries)
    combined = WeylElement(m, {((0,) * m, b): Fraction(1) for b in betas})
    ok = pairing.rank() == expected and combined.order() == order
    return SymbolQuotientResult(ok, expected)

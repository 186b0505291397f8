"""Global differential operators between line bundle twists on projective space.

Sections of O(a) over the chart x_j != 0 are spanned by degree-a Laurent
monomials whose only negative exponent sits in slot j.  A homogeneous Weyl
element of x-degree b - a maps each such monomial to degree-b monomials that
are again chart sections, so it induces maps O(a) -> O(b) on every chart
simultaneously; the space of global operators of order <= N is realized as
the span of these induced maps.  Concretely: rows of the action matrix are
the candidate monomials x^alpha d^beta with |beta| <= N and
|alpha| - |beta| = b - a, columns are (test monomial, image monomial)
coefficient slots over a finite test set of chart monomials, and the
dimension is the rank once enlarging the test box twice in a row no longer
changes it.

The structural rank deficiency comes from the Euler operator E = sum x_i d_i:
E - a annihilates every degree-a monomial, so phi (E - a) acts as zero for
every graded phi, and growing the box certifies that nothing else does at
the reported size.

Also here: induced maps on degree-0 and top Cech cohomology of the twists,
the minimal order at which operators into a negative twist appear, and the
unipotent block construction pairing a twist with a shifted twist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import InconsistencyError, PreconditionError
from .laurent import Exponent, LaurentPoly, monomials_of_degree
from .linalg import ExactMatrix
from .weyl import WeylElement, euler_operator, falling

Candidate = tuple[Exponent, Exponent]

BOX_GROWTH_STEP = 2
BOX_GROWTH_LIMIT = 40


def candidate_monomials(n: int, a: int, b: int, order: int) -> list[Candidate]:
    """All (alpha, beta) with |beta| <= N and |alpha| = |beta| + b - a,
    sorted by derivative order, then lexicographically on (beta, alpha)."""
    if n < 1:
        raise PreconditionError("projective dimension must be >= 1")
    if order < 0:
        raise PreconditionError("operator order must be >= 0")
    nvars = n + 1
    out: list[Candidate] = []
    for k in range(max(0, a - b), order + 1):
        betas = monomials_of_degree(nvars, k)
        alphas = monomials_of_degree(nvars, k + b - a)
        for beta in betas:
            for alpha in alphas:
                out.append((alpha, beta))
    return out


def candidate_count(n: int, a: int, b: int, order: int) -> int:
    """Closed form for len(candidate_monomials(n, a, b, N))."""
    total = 0
    for k in range(max(0, a - b), order + 1):
        total += comb(k + n, n) * comb(k + b - a + n, n)
    return total


def chart_test_monomials(n: int, a: int, box: int) -> list[Exponent]:
    """Degree-a Laurent monomials with at most one negative exponent and all
    exponents in [-box, box], sorted."""
    if box < 0:
        raise PreconditionError("box must be nonnegative")
    nvars = n + 1
    out: list[Exponent] = []
    if a >= 0:
        out.extend(e for e in monomials_of_degree(nvars, a) if max(e) <= box)
    for j in range(nvars):
        for t in range(1, box + 1):
            rest_deg = a + t
            if rest_deg < 0:
                continue
            for rest in monomials_of_degree(n, rest_deg):
                if rest and max(rest) > box:
                    continue
                out.append(rest[:j] + (-t,) + rest[j:])
    return sorted(out)


def action_matrix(candidates: list[Candidate], testset: list[Exponent]) -> ExactMatrix:
    """Rows: candidates; columns: (test monomial, image monomial) slots."""
    ff_cache: dict[tuple[int, int], int] = {}
    col_index: dict[tuple[Exponent, Exponent], int] = {}
    entries: dict[tuple[int, int], Fraction] = {}
    for row, (alpha, beta) in enumerate(candidates):
        for gamma in testset:
            coeff = 1
            for g, bexp in zip(gamma, beta):
                if bexp:
                    key = (g, bexp)
                    ff = ff_cache.get(key)
                    if ff is None:
                        ff = falling(g, bexp)
                        ff_cache[key] = ff
                    coeff *= ff
                    if coeff == 0:
                        break
            if coeff == 0:
                continue
            image = tuple(g + x - d for g, x, d in zip(gamma, alpha, beta))
            slot = (gamma, image)
            j = col_index.get(slot)
            if j is None:
                j = len(col_index)
                col_index[slot] = j
            entries[(row, j)] = Fraction(coeff)
    return ExactMatrix(len(candidates), len(col_index), entries)


@dataclass(frozen=True)
class TwistedDOSpace:
    """The space of order <= N global operators O(a) -> O(b) on P^n."""

    n: int
    a: int
    b: int
    order: int
    dim: int
    box: int
    candidates: tuple[Candidate, ...] = field(repr=False)
    matrix: ExactMatrix = field(repr=False)
    rank_history: tuple[tuple[int, int], ...] = field(repr=False)


def global_do_dimension(n: int, a: int, b: int, order: int,
                        initial_box: int | None = None) -> TwistedDOSpace:
    """Dimension of the global operator space, with the certified test box.

    Starts from box = N + |a| + |b| + 2 and grows by 2 until the rank of the
    action matrix is unchanged across two consecutive enlargements; reports
    the first box of the stable triple.
    """
    cands = candidate_monomials(n, a, b, order)
    box0 = initial_box if initial_box is not None else order + abs(a) + abs(b) + 2
    history: list[tuple[int, int]] = []
    matrices: list[ExactMatrix] = []
    box = box0
    while True:
        m = action_matrix(cands, chart_test_monomials(n, a, box))
        history.append((box, m.rank()))
        matrices.append(m)
        if len(matrices) > 3:
            matrices.pop(0)
        if len(history) >= 3:
            (b0, r0), (_, r1), (_, r2) = history[-3], history[-2], history[-1]
            if r0 == r1 == r2:
                return TwistedDOSpace(
                    n=n, a=a, b=b, order=order, dim=r0, box=b0,
                    candidates=tuple(cands), matrix=matrices[-3],
                    rank_history=tuple(history))
        if box - box0 >= BOX_GROWTH_LIMIT:
            raise InconsistencyError(
                f"action-matrix rank failed to stabilize for "
                f"(n={n}, a={a}, b={b}, N={order}) within box {box}")
        box += BOX_GROWTH_STEP


@lru_cache(maxsize=None)
def do_dimension(n: int, a: int, b: int, order: int) -> int:
    """Cached dimension-only variant of global_do_dimension."""
    return global_do_dimension(n, a, b, order).dim


def euler_relation(n: int, a: int, phi: WeylElement) -> WeylElement:
    """phi composed with (E - a); annihilates every degree-a section."""
    shifted = euler_operator(n + 1) - WeylElement.one(n + 1) * a
    return phi * shifted


def strictness_check(n: int, a: int, b: int, order: int) -> bool:
    """True iff raising the order bound from N-1 to N enlarges the space."""
    if order < 1:
        raise PreconditionError("strictness compares N with N - 1, so N >= 1")
    return do_dimension(n, a, b, order) > do_dimension(n, a, b, order - 1)


@dataclass(frozen=True)
class NegativeTwistResult:
    """Outcome of searching for operators O -> O(-d) by increasing order."""

    n: int
    d: int
    order: int | None
    dim: int
    searched_up_to: int

    @property
    def found(self) -> bool:
        return self.order is not None


def negative_twist_existence(n: int, d: int, n_max: int = 4) -> NegativeTwistResult:
    """Least order N <= n_max with dim DO^N(O, O(-d)) > 0 on P^n.

    Exhausting the budget is reported as order None, which is a statement
    about the searched range only, never about nonexistence.
    """
    if n < 1:
        raise PreconditionError("projective dimension must be >= 1")
    if d < 1:
        raise PreconditionError("the twist drop d must be >= 1")
    if n_max < 0:
        raise PreconditionError("search budget must be nonnegative")
    for order in range(n_max + 1):
        dim = do_dimension(n, 0, -d, order)
        if dim > 0:
            return NegativeTwistResult(n=n, d=d, order=order, dim=dim, searched_up_to=n_max)
    return NegativeTwistResult(n=n, d=d, order=None, dim=0, searched_up_to=n_max)


# ---- induced maps on cohomology ---------------------------------------


def h0_basis(n: int, k: int) -> list[Exponent]:
    """Monomial basis of the degree-0 cohomology of O(k)."""
    return monomials_of_degree(n + 1, k)


def hn_basis(n: int, k: int) -> list[Exponent]:
    """All-negative-exponent monomials of degree k (top Cech cohomology)."""
    inner = monomials_of_degree(n + 1, -k - (n + 1))
    return sorted(tuple(-1 - v for v in e) for e in inner)


def induced_cohomology_map(n: int, a: int, b: int, op: WeylElement,
                           i: int) -> ExactMatrix:
    """Matrix of the map induced by op on H^i of the twists, i in {0, n}.

    For i = n the image is projected back onto the all-negative monomial
    basis; monomials with a nonnegative exponent are coboundaries and are
    discarded.
    """
    if op.nvars != n + 1:
        raise PreconditionError("operator has the wrong number of variables")
    if not op.is_graded_of_degree(b - a):
        raise PreconditionError(f"operator is not homogeneous of x-degree {b - a}")
    if i == 0:
        source, target = h0_basis(n, a), h0_basis(n, b)
        project = False
    elif i == n:
        source, target = hn_basis(n, a), hn_basis(n, b)
        project = True
    else:
        raise PreconditionError("induced maps are available for i = 0 and i = n")
    tgt_index = {e: r for r, e in enumerate(target)}
    entries: dict[tuple[int, int], Fraction] = {}
    for j, gamma in enumerate(source):
        for image, c in op.apply_monomial(gamma).items():
            row = tgt_index.get(image)
            if row is None:
                if project and max(image) >= 0:
                    continue
                raise InconsistencyError(
                    f"image monomial {image} escaped the H^{i} basis")
            entries[(row, j)] = c
    return ExactMatrix(len(target), len(source), entries)


# ---- unipotent block operators ----------------------------------------


@dataclass(frozen=True)
class BlockOperatorReport:
    preserves_second_summand: bool
    identity_on_sub: bool
    identity_on_quotient: bool
    order: int
    order_witness: Exponent | None

    @property
    def ok(self) -> bool:
        return (self.preserves_second_summand and self.identity_on_sub
                and self.identity_on_quotient
                and (self.order == 0 or self.order_witness is not None))


@dataclass(frozen=True)
class BlockOperator:
    """(s, t) |-> (s, D12 s + t) on pairs of sections of O(m) and O(d).

    Fixes the second summand pointwise and induces the identity on sub and
    quotient; everything nontrivial sits in the off-diagonal corner, so the
    operator order equals the order of D12 (0 when D12 = 0).
    """

    n: int
    m: int
    d: int
    d12: WeylElement

    def __post_init__(self):
        if self.d12.nvars != self.n + 1:
            raise PreconditionError("D12 has the wrong number of variables")
        if not self.d12.is_graded_of_degree(self.d - self.m):
            raise PreconditionError(
                f"D12 must be homogeneous of x-degree {self.d - self.m}")

    def apply_pair(self, s: LaurentPoly, t: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        return s, self.d12.apply(s) + t

    def order(self) -> int:
        o = self.d12.order()
        return 0 if o is None else max(o, 0)

    def as_matrix(self) -> list[list[WeylElement]]:
        nvars = self.n + 1
        return [[WeylElement.one(nvars), WeylElement.zero(nvars)],
                [self.d12, WeylElement.one(nvars)]]

    def verify(self, box: int | None = None) -> BlockOperatorReport:
        """Exact evaluation on chart monomial test sections."""
        if box is None:
            box = self.order() + abs(self.m) + abs(self.d) + 3
        zero_s = LaurentPoly.zero(self.n + 1)
        sub_ok = True
        quot_ok = True
        preserves = True
        for gamma in chart_test_monomials(self.n, self.d, box):
            t = LaurentPoly.monomial(gamma)
            s_out, t_out = self.apply_pair(zero_s, t)
            if not s_out.is_zero():
                preserves = False
            if t_out != t:
                sub_ok = False
        top = self.d12.order_part(self.order()) if not self.d12.is_zero() else None
        witness = None
        for gamma in chart_test_monomials(self.n, self.m, box):
            s = LaurentPoly.monomial(gamma)
            s_out, _ = self.apply_pair(s, LaurentPoly.zero(self.n + 1))
            if s_out != s:
                quot_ok = False
            if witness is None and top is not None and top.apply_monomial(gamma):
                witness = gamma
        return BlockOperatorReport(
            preserves_second_summand=preserves,
            identity_on_sub=sub_ok,
            identity_on_quotient=quot_ok,
            order=self.order(),
            order_witness=witness)


def block_operator(n: int, m: int, d: int, d12: WeylElement) -> BlockOperator:
    return BlockOperator(n=n, m=m, d=d, d12=d12)

"""Principal symbols of differential operators and ellipticity verdicts.

The order-N symbol keeps exactly the order-N terms of each operator and
replaces d^beta by xi^beta, giving a matrix of polynomials homogeneous of
degree N in the cotangent variables (with polynomial x-coefficients when the
operators have them).  Internally an entry lives in 2m variables: the first
m are the chart coordinates, the last m the cotangent coordinates.

Two ellipticity notions are implemented for constant-coefficient symbols:

* algebraic: is det sigma nonvanishing away from the origin over the
  algebraic closure?  For a positive-degree form in m >= 2 variables the
  answer is always no; witnesses are produced for monomial and binomial
  determinants (rational where possible, otherwise one coordinate is a root
  of an explicit integer polynomial).

* real: is det sigma nonvanishing away from the origin over the reals?
  Quadratic forms are decided exactly by rational congruence
  diagonalization.  Other degrees run a deterministic dyadic sign-change
  search over the max-norm unit sphere; a zero or sign change certifies a
  "false", exhaustion returns "unknown" rather than a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .laurent import Exponent, LaurentPoly
from .weyl import WeylElement

DEFAULT_GRID_DEPTH = 12
_GRID_BASE_STEP = Fraction(1, 4)


# ---- symbol extraction -------------------------------------------------


@dataclass(frozen=True)
class SymbolMatrix:
    """r x r matrix of xi-homogeneous polynomials of common degree N."""

    m: int
    order: int
    entries: tuple[tuple[LaurentPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def constant_coefficient(self) -> bool:
        m = self.m
        return all(max(e[:m], default=0) == 0 and min(e[:m], default=0) == 0
                   for row in self.entries for p in row for e in p.terms)

    def det(self) -> LaurentPoly:
        return _poly_det([list(row) for row in self.entries], 2 * self.m)

    def xi_det(self) -> LaurentPoly:
        """Determinant as a polynomial in the cotangent variables alone."""
        return _strip_x(self.det(), self.m)

    def __matmul__(self, other: "SymbolMatrix") -> "SymbolMatrix":
        if not isinstance(other, SymbolMatrix):
            return NotImplemented
        if self.m != other.m or self.size != other.size:
            raise ValueError("symbol matrix shape mismatch")
        r = self.size
        rows = []
        for i in range(r):
            row = []
            for j in range(r):
                acc = LaurentPoly.zero(2 * self.m)
                for k in range(r):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(tuple(row))
        return SymbolMatrix(m=self.m, order=self.order + other.order,
                            entries=tuple(rows))


def _poly_det(block: list[list[LaurentPoly]], nvars: int) -> LaurentPoly:
    r = len(block)
    if r == 0:
        return LaurentPoly.one(nvars)
    if r == 1:
        return block[0][0]
    acc = LaurentPoly.zero(nvars)
    for j in range(r):
        entry = block[0][j]
        if entry.is_zero():
            continue
        minor = [[row[t] for t in range(r) if t != j] for row in block[1:]]
        term = entry * _poly_det(minor, nvars)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _strip_x(poly: LaurentPoly, m: int) -> LaurentPoly:
    out = {}
    for e, c in poly.terms.items():
        if any(e[:m]):
            raise PreconditionError("symbol has nonconstant chart coefficients")
        out[e[m:]] = c
    return LaurentPoly(m, out)


def symbol_of(op, order: int) -> SymbolMatrix:
    """Order-N symbol of an operator or an operator matrix.

    Keeps the terms of derivative order exactly N and substitutes the
    cotangent variables for the derivatives.  Terms above order N are a
    precondition violation, terms below it drop out.
    """
    if isinstance(op, WeylElement):
        rows = [[op]]
    else:
        rows = [list(r) for r in op]
    if order < 0:
        raise PreconditionError("symbol order must be nonnegative")
    m = rows[0][0].nvars
    out_rows = []
    for row in rows:
        out_row = []
        if len(row) != len(rows):
            raise PreconditionError("operator matrix must be square")
        for entry in row:
            if entry.nvars != m:
                raise PreconditionError("mixed variable counts in operator matrix")
            top = entry.order()
            if top is not None and top > order:
                raise PreconditionError(
                    f"operator of order {top} has no order-{order} symbol")
            terms = {}
            for (alpha, beta), c in entry.terms.items():
                if sum(beta) == order:
                    terms[tuple(alpha) + tuple(beta)] = c
            out_row.append(LaurentPoly(2 * m, terms))
        out_rows.append(tuple(out_row))
    return SymbolMatrix(m=m, order=order, entries=tuple(out_rows))


def torus_operator_check(op) -> bool:
    """True when every coefficient is constant (translation-invariant shape)."""
    rows = [[op]] if isinstance(op, WeylElement) else [list(r) for r in op]
    return all(not any(alpha)
               for row in rows for entry in row
               for (alpha, _beta) in entry.terms)


# ---- witnesses and verdicts -------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A nonzero cotangent vector annihilating the symbol determinant.

    Components are Fractions, except possibly one symbolic entry "t" whose
    value is a root of defining_poly (integer coefficients, ascending).
    ``real`` records whether the vector can be realized over the reals.
    """

    components: tuple
    defining_poly: tuple[int, ...] | None = None
    real: bool = True

    def is_rational(self) -> bool:
        return self.defining_poly is None

    def as_strings(self) -> list[str]:
        return [str(c) for c in self.components]


@dataclass(frozen=True)
class AlgebraicEllipticity:
    elliptic: bool
    witness: Witness | None
    reason: str


@dataclass(frozen=True)
class RealEllipticity:
    verdict: str  # "true" | "false" | "unknown"
    witness: Witness | None
    sign_points: tuple[tuple[Fraction, ...], tuple[Fraction, ...]] | None
    reason: str


@dataclass(frozen=True)
class EllipticityVerdict:
    algebraic: bool
    real: str
    witness: Witness | None


def _require_constant(S: SymbolMatrix) -> LaurentPoly:
    if not S.constant_coefficient:
        raise PreconditionError(
            "ellipticity checks need constant-coefficient symbols")
    return S.xi_det()


def _unit(m: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(m))


def _primitive(vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale to coprime integers with the first nonzero entry positive."""
    from math import gcd

    lcm = 1
    for v in vec:
        d = v.denominator
        lcm = lcm // gcd(lcm, d) * d
    ints = [int(v * lcm) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(Fraction(v) for v in ints)


def elliptic_algebraic(S: SymbolMatrix) -> AlgebraicEllipticity:
    """Can det sigma vanish on a nonzero cotangent vector over the closure?"""
    det = _require_constant(S)
    m = S.m
    if det.is_zero():
        return AlgebraicEllipticity(
            elliptic=False,
            witness=Witness(components=_unit(m, 0)),
            reason="determinant vanishes identically")
    deg = det.homogeneous_degree()
    if deg == 0:
        return AlgebraicEllipticity(elliptic=True, witness=None,
                                    reason="nonzero constant determinant")
    if m == 1:
        return AlgebraicEllipticity(
            elliptic=True, witness=None,
            reason="single cotangent variable: only root is the origin")
    witness = _closure_witness(det, m)
    return AlgebraicEllipticity(
        elliptic=False, witness=witness,
        reason="positive-degree form in several variables vanishes on the closure")


def _closure_witness(det: LaurentPoly, m: int) -> Witness | None:
    terms = sorted(det.terms.items())
    if len(terms) == 1:
        (exps, _c), = terms
        support = [i for i, e in enumerate(exps) if e > 0]
        if len(support) == 1:
            pick = (support[0] + 1) % m
        else:
            pick = support[0]
        return Witness(components=_unit(m, pick))
    if len(terms) == 2:
        (e1, c1), (e2, c2) = terms
        j = next(i for i in range(m) if e1[i] != e2[i])
        lo = min(e1[j], e2[j])
        if lo > 0:
            # zeroing xi_j kills both terms
            comps = [Fraction(1)] * m
            comps[j] = Fraction(0)
            return Witness(components=tuple(comps))
        # both terms with the others set to 1: c_hi t^p + c_lo = 0
        hi_first = e1[j] > e2[j]
        c_hi, c_lo = (c1, c2) if hi_first else (c2, c1)
        p = abs(e1[j] - e2[j])
        root = _rational_root(-c_lo / c_hi, p)
        if root is not None:
            comps = [Fraction(1)] * m
            comps[j] = root
            return Witness(components=tuple(comps))
        defining = _integer_binomial(c_hi, c_lo, p)
        comps: list = [Fraction(1)] * m
        comps[j] = "t"
        has_real_root = (p % 2 == 1) or (-c_lo / c_hi > 0)
        return Witness(components=tuple(comps), defining_poly=defining,
                       real=has_real_root)
    return None


def _rational_root(value: Fraction, p: int) -> Fraction | None:
    """The rational t with t^p = value, if one exists."""
    if value == 0:
        return Fraction(0)
    if p % 2 == 0 and value < 0:
        return None
    sign = -1 if value < 0 else 1
    num = _integer_root(abs(value.numerator), p)
    den = _integer_root(value.denominator, p)
    if num is None or den is None:
        return None
    return Fraction(sign * num, den)


def _integer_root(v: int, p: int) -> int | None:
    if v == 0:
        return 0
    r = round(v ** (1.0 / p))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** p == v:
            return cand
    return None


def _integer_binomial(c_hi: Fraction, c_lo: Fraction, p: int) -> tuple[int, ...]:
    """Integer coefficients of c_hi t^p + c_lo, cleared and reduced."""
    from math import gcd

    lcm = c_hi.denominator // gcd(c_hi.denominator, c_lo.denominator) * c_lo.denominator
    a = int(c_lo * lcm)
    b = int(c_hi * lcm)
    g = gcd(a, b)
    if g:
        a, b = a // g, b // g
    if b < 0:
        a, b = -a, -b
    return (a,) + (0,) * (p - 1) + (b,)


# ---- real ellipticity --------------------------------------------------


def elliptic_real(S: SymbolMatrix, depth: int = DEFAULT_GRID_DEPTH) -> RealEllipticity:
    det = _require_constant(S)
    m = S.m
    if det.is_zero():
        return RealEllipticity(verdict="false",
                               witness=Witness(components=_unit(m, 0)),
                               sign_points=None,
                               reason="determinant vanishes identically")
    deg = det.homogeneous_degree()
    if deg == 0:
        return RealEllipticity(verdict="true", witness=None, sign_points=None,
                               reason="nonzero constant determinant")
    if m == 1:
        return RealEllipticity(verdict="true", witness=None, sign_points=None,
                               reason="single cotangent variable: only root is the origin")
    if deg == 2:
        return _quadratic_form_verdict(det, m)
    return _grid_search_verdict(det, m, depth)


def _gram_matrix(det: LaurentPoly, m: int) -> list[list[Fraction]]:
    G = [[Fraction(0)] * m for _ in range(m)]
    for exps, c in det.terms.items():
        support = [i for i, e in enumerate(exps) if e]
        if len(support) == 1:
            i = support[0]
            G[i][i] += c
        else:
            i, j = support
            G[i][j] += c / 2
            G[j][i] += c / 2
    return G


def _congruence_diagonal(G: list[list[Fraction]]):
    """Exact symmetric reduction: returns (diag, T) with Q(T_i) = diag[i]
    and the T_i pairwise Q-orthogonal."""
    m = len(G)
    A = [row[:] for row in G]
    T = [[Fraction(1 if i == j else 0) for j in range(m)] for i in range(m)]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        T[i], T[j] = T[j], T[i]

    def add_into(i, j, f):
        # basis vector i += f * basis vector j
        for k in range(m):
            A[i][k] += f * A[j][k]
        for k in range(m):
            A[k][i] += f * A[k][j]
        for k in range(m):
            T[i][k] += f * T[j][k]

    for step in range(m):
        if A[step][step] == 0:
            found = next((j for j in range(step + 1, m) if A[j][j] != 0), None)
            if found is not None:
                swap(step, found)
            else:
                pair = next(((j, k) for j in range(step, m)
                             for k in range(j + 1, m) if A[j][k] != 0), None)
                if pair is None:
                    break
                j, k = pair
                add_into(j, k, Fraction(1))
                if j != step:
                    swap(step, j)
        piv = A[step][step]
        for j in range(step + 1, m):
            if A[j][step]:
                add_into(j, step, -A[j][step] / piv)
    diag = [A[i][i] for i in range(m)]
    return diag, [tuple(row) for row in T]


def _quadratic_form_verdict(det: LaurentPoly, m: int) -> RealEllipticity:
    diag, T = _congruence_diagonal(_gram_matrix(det, m))
    for i, d in enumerate(diag):
        if d == 0:
            w = _primitive(T[i])
            return RealEllipticity(
                verdict="false", witness=Witness(components=w), sign_points=None,
                reason="degenerate quadratic form: exact radical vector")
    pos = [i for i, d in enumerate(diag) if d > 0]
    neg = [i for i, d in enumerate(diag) if d < 0]
    if not pos or not neg:
        return RealEllipticity(verdict="true", witness=None, sign_points=None,
                               reason="definite quadratic form (exact signature)")
    for i in pos:
        for j in neg:
            ratio = -diag[i] / diag[j]
            s = _rational_root(ratio, 2)
            if s is not None:
                w = _primitive([a + s * b for a, b in zip(T[i], T[j])])
                return RealEllipticity(
                    verdict="false", witness=Witness(components=w),
                    sign_points=None,
                    reason="indefinite quadratic form with rational isotropic vector")
    plus = _primitive(T[pos[0]])
    minus = _primitive(T[neg[0]])
    return RealEllipticity(
        verdict="false", witness=None, sign_points=(minus, plus),
        reason="indefinite quadratic form (exact signature); no rational zero "
               "along the diagonalizing pairs")


def _grid_search_verdict(det: LaurentPoly, m: int, depth: int) -> RealEllipticity:
    """Deterministic dyadic search on the max-norm unit sphere."""
    step = _GRID_BASE_STEP
    ticks = []
    t = Fraction(-1)
    while t <= 1:
        ticks.append(t)
        t += step
    previous: dict[tuple, Fraction] = {}
    sign_pair = None
    for axis in range(m):
        for face_sign in (Fraction(1), Fraction(-1)):
            for point in _face_points(m, axis, face_sign, ticks):
                value = det.evaluate(point)
                if value == 0:
                    return RealEllipticity(
                        verdict="false", witness=Witness(components=point),
                        sign_points=None, reason="grid zero of the determinant")
                previous[point] = value
    # look for sign changes between grid neighbours on shared faces
    for point, value in previous.items():
        for axis in range(m):
            if abs(point[axis]) == 1:
                continue
            shifted = list(point)
            shifted[axis] += step
            neighbour = tuple(shifted)
            other = previous.get(neighbour)
            if other is not None and (value < 0) != (other < 0):
                sign_pair = (point, neighbour) if value < 0 else (neighbour, point)
                refined = _bisect_zero(det, sign_pair, depth)
                if isinstance(refined, Witness):
                    return RealEllipticity(verdict="false", witness=refined,
                                           sign_points=None,
                                           reason="dyadic refinement hit an exact zero")
                return RealEllipticity(verdict="false", witness=None,
                                       sign_points=refined,
                                       reason="sign change across adjacent grid points")
    return RealEllipticity(
        verdict="unknown", witness=None, sign_points=None,
        reason=f"no sign variation at dyadic resolution {step} on the unit sphere")


def _face_points(m: int, axis: int, face_sign: Fraction, ticks: list[Fraction]):
    def rec(i: int, prefix: tuple):
        if i == m:
            yield prefix
            return
        if i == axis:
            yield from rec(i + 1, prefix + (face_sign,))
            return
        for t in ticks:
            yield from rec(i + 1, prefix + (t,))

    yield from rec(0, ())


def _bisect_zero(det: LaurentPoly, pair, depth: int):
    neg_pt, pos_pt = pair
    for _ in range(depth):
        mid = tuple((a + b) / 2 for a, b in zip(neg_pt, pos_pt))
        value = det.evaluate(mid)
        if value == 0:
            return Witness(components=mid)
        if value < 0:
            neg_pt = mid
        else:
            pos_pt = mid
    return (neg_pt, pos_pt)


def classify(S: SymbolMatrix, depth: int = DEFAULT_GRID_DEPTH) -> EllipticityVerdict:
    """Combined verdict; prefers a real witness when both routes found one."""
    alg = elliptic_algebraic(S)
    real = elliptic_real(S, depth=depth)
    witness = real.witness if real.witness is not None else alg.witness
    return EllipticityVerdict(algebraic=alg.elliptic, real=real.verdict,
                              witness=witness)


# ---- text form ---------------------------------------------------------


def format_symbol_poly(poly: LaurentPoly, m: int) -> str:
    """Terms "c * x^(..) s^(..)" joined by " + ", with s the cotangent block."""
    if poly.is_zero():
        z = ",".join("0" for _ in range(m))
        return f"0 * x^({z}) s^({z})"
    parts = []
    for exps in sorted(poly.terms):
        c = poly.terms[exps]
        sx = ",".join(str(v) for v in exps[:m])
        ss = ",".join(str(v) for v in exps[m:])
        parts.append(f"{c} * x^({sx}) s^({ss})")
    return " + ".join(parts)

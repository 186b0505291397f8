"""Cohomology of line bundles and symmetric tangent twists on projective space.

Line bundles O(k) on P^n have cohomology concentrated in degrees 0 and n:
h^0 counts degree-k monomials in the n+1 homogeneous coordinates, h^n counts
degree-k Laurent monomials with every exponent negative (the top Cech cell
of the standard cover), and everything in between vanishes.  Both counting
descriptions are implemented: closed binomial forms, and a direct monomial
enumeration used as an independent cross-check at desk scale.

Twists of symmetric tangent powers are handled through the two-step
resolution  Sym^(k-1)V (j+k-1) -> Sym^k V (j+k) -> Sym^k T (j)  coming from
the Euler presentation of the tangent bundle: on P^n with n >= 2 the middle
cohomology of line bundles vanishes, so h^0 of the quotient is the corank
of the explicit multiplication matrix on global sections.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import PreconditionError
from .laurent import monomials_of_degree
from .linalg import ExactMatrix

CECH_MAX_N = 4
CECH_MAX_TWIST = 12


def chi_line(n: int, k: int) -> int:
    """Euler characteristic of O(k) on P^n: the binomial (n+k choose n) as a
    polynomial in k, so negative twists produce signed values."""
    if n < 1:
        raise PreconditionError("projective dimension must be >= 1")
    num = 1
    for i in range(1, n + 1):
        num *= k + i
    chi = Fraction(num, 1)
    for i in range(2, n + 1):
        chi /= i
    assert chi.denominator == 1
    return int(chi)


def h0_line(n: int, k: int) -> int:
    return comb(n + k, n) if k >= 0 else 0


def hn_line(n: int, k: int) -> int:
    return comb(-k - 1, n) if k <= -n - 1 else 0


@dataclass(frozen=True)
class LineBundleCohomology:
    n: int
    k: int
    dims: tuple[int, ...]
    chi: int


def line_cohomology(n: int, k: int) -> LineBundleCohomology:
    """All cohomology dimensions h^0..h^n of O(k) on P^n, with chi."""
    if n < 1:
        raise PreconditionError("projective dimension must be >= 1")
    dims = [0] * (n + 1)
    dims[0] = h0_line(n, k)
    dims[n] = hn_line(n, k)
    chi = chi_line(n, k)
    assert chi == dims[0] + ((-1) ** n) * dims[n]
    return LineBundleCohomology(n, k, tuple(dims), chi)


def cech_line_oracle(n: int, k: int, i: int) -> int:
    """Monomial-count route to h^i(P^n, O(k)), for i in {0, n} at desk scale.

    h^0 enumerates nonnegative exponent vectors of total degree k; h^n
    enumerates exponent vectors with every entry <= -1 of total degree k.
    Bounds: n <= 4, |k| <= 12.
    """
    if not (1 <= n <= CECH_MAX_N):
        raise PreconditionError(f"cech oracle bounded to 1 <= n <= {CECH_MAX_N}")
    if abs(k) > CECH_MAX_TWIST:
        raise PreconditionError(f"cech oracle bounded to |k| <= {CECH_MAX_TWIST}")
    if i == 0:
        return len(monomials_of_degree(n + 1, k)) if k >= 0 else 0
    if i == n:
        # shift gamma_j = -1 - e_j turns the all-negative count into a
        # nonnegative count of total degree -k - (n+1)
        return len(monomials_of_degree(n + 1, -k - (n + 1)))
    raise PreconditionError("cech oracle only covers i = 0 and i = n")


@dataclass(frozen=True)
class SymTangentH0:
    n: int
    k: int
    j: int
    h0: int
    chi: int


def chi_sym_tangent(n: int, k: int, j: int) -> int:
    """chi of Sym^k T twisted by j, by additivity along the Euler resolution."""
    if n < 1:
        raise PreconditionError("projective dimension must be >= 1")
    if k < 0:
        raise PreconditionError("symmetric power must be nonnegative")
    lead = comb(n + k, k) * chi_line(n, j + k)
    if k == 0:
        return lead
    return lead - comb(n + k - 1, k - 1) * chi_line(n, j + k - 1)


def h0_sym_tangent(n: int, k: int, j: int) -> SymTangentH0:
    """h^0 of Sym^k T(j) on P^n, n >= 2, as corank of the Euler multiplication map.

    Source basis: (mu, gamma) with |mu| = k-1 over n+1 symbols and gamma a
    degree-(j+k-1) monomial; target basis likewise with |nu| = k and degree
    j+k.  The map sends (mu, gamma) to the sum over i of (mu+e_i, gamma+e_i).
    """
    if n < 2:
        raise PreconditionError(
            "h0_sym_tangent needs n >= 2; on the projective line the tangent "
            "bundle is O(2), so use h^0(O(2k + j)) instead")
    if k < 0:
        raise PreconditionError("symmetric power must be nonnegative")
    target_mus = monomials_of_degree(n + 1, k)
    target_sections = monomials_of_degree(n + 1, j + k) if j + k >= 0 else []
    target_dim = len(target_mus) * len(target_sections)
    if k == 0 or j + k - 1 < 0:
        rank = 0
    else:
        source_mus = monomials_of_degree(n + 1, k - 1)
        source_sections = monomials_of_degree(n + 1, j + k - 1)
        tgt_index = {}
        for a, nu in enumerate(target_mus):
            for b, delta in enumerate(target_sections):
                tgt_index[(nu, delta)] = a * len(target_sections) + b
        entries: dict[tuple[int, int], Fraction] = {}
        col = 0
        for mu in source_mus:
            for gamma in source_sections:
                for i in range(n + 1):
                    nu = tuple(v + (1 if t == i else 0) for t, v in enumerate(mu))
                    delta = tuple(v + (1 if t == i else 0) for t, v in enumerate(gamma))
                    row = tgt_index[(nu, delta)]
                    key = (row, col)
                    entries[key] = entries.get(key, Fraction(0)) + 1
                col += 1
        rank = ExactMatrix(len(tgt_index), col, entries).rank()
    h0 = target_dim - rank
    return SymTangentH0(n, k, j, h0, chi_sym_tangent(n, k, j))


__all__ = [
    "LineBundleCohomology", "SymTangentH0",
    "chi_line", "h0_line", "hn_line", "line_cohomology", "cech_line_oracle",
    "chi_sym_tangent", "h0_sym_tangent",
    "CECH_MAX_N", "CECH_MAX_TWIST",
]

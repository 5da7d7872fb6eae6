"""Intertwiner eigenvalues on K-types and harmonic dimension counts.

The integral operator with kernel |Re w(x,y)|^(-lambda-2n) on the sphere
S^(4n-1) is diagonal on the K-types V^{l,l'} (l >= l' >= 0, l = l' mod 2);
its scalar there depends on (l, l') only through l + l' and equals

    A_{l+l'}(lambda) = 2 pi^(2n-1/2) G((1-lambda)/2 - n)/G(lambda/2 + n)
                       * G((l+l'+lambda)/2 + n)/G((l+l'-lambda)/2 + n).

Dimension bookkeeping: the total multiplicity of the types with l + l' = 2m
equals the dimension of bidegree-(m,m) harmonic polynomials on C^(2n), for
which both the closed product formula and an exact brute-force Laplacian-rank
count are provided.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .special_functions import SignedLogValue, gamma_ratio

__all__ = [
    "SpectralQuery",
    "DimFactorizationReport",
    "eigenvalue",
    "base_eigenvalue",
    "even_eigenvalue",
    "dim_sum",
    "harmonic_dim_bruteforce",
    "dim_factorization_report",
    "highest_weight_eval",
    "highest_weight_eval_batch",
]

# Brute-force Laplacian ranks blow up combinatorially past these bounds.
_BRUTEFORCE_MAX_N = 3
_BRUTEFORCE_MAX_M = 4


@dataclass(frozen=True)
class SpectralQuery:
    """One eigenvalue request: rank n, K-type (l, l'), spectral parameter."""

    n: int
    l: int
    l_prime: int
    lam: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rank n must be >= 1")
        if not (self.l >= self.l_prime >= 0):
            raise ValueError("K-type labels require l >= l' >= 0")
        if (self.l - self.l_prime) % 2 != 0:
            raise ValueError("K-type labels require l = l' (mod 2)")
        if self.n == 1 and self.l_prime != 0:
            raise ValueError("rank 1 only carries types with l' = 0")


def eigenvalue(query: SpectralQuery) -> SignedLogValue:
    """Eigenvalue of the kernel operator on V^{l,l'}; poles are encoded."""
    n, lam = query.n, query.lam
    k = query.l + query.l_prime
    lead = SignedLogValue.from_log((2 * n - 0.5) * math.log(math.pi)
                                   + math.log(2.0))
    return (lead
            * gamma_ratio((1 - lam) / 2 - n, lam / 2 + n)
            * gamma_ratio((k + lam) / 2 + n, (k - lam) / 2 + n))


def base_eigenvalue(n: int, mu: float) -> SignedLogValue:
    """Eigenvalue on the constants (l = l' = 0):
    2 pi^(2n-1/2) G((1-mu)/2 - n) / G(n - mu/2)."""
    lead = SignedLogValue.from_log((2 * n - 0.5) * math.log(math.pi)
                                   + math.log(2.0))
    return lead * gamma_ratio((1 - mu) / 2 - n, n - mu / 2)


def even_eigenvalue(n: int, m: int, mu: float) -> SignedLogValue:
    """Eigenvalue on the types with l + l' = 2m, in Pochhammer-quotient form:

        (n + mu/2)_m / (n - mu/2)_m * base_eigenvalue(n, mu)
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    out = base_eigenvalue(n, mu)
    for i in range(m):
        out = out * (SignedLogValue.from_real(n + mu / 2 + i)
                     / SignedLogValue.from_real(n - mu / 2 + i))
    return out


def _rising_int(a: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= a + i
    return out


def dim_sum(n: int, m: int) -> int:
    """Total multiplicity of the types with l + l' = 2m (exact integer):

        (2m + 2n - 1) ((m+1)_{2n-2})^2 / (G(2n) G(2n-1))
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    num = (2 * m + 2 * n - 1) * _rising_int(m + 1, 2 * n - 2) ** 2
    den = math.factorial(2 * n - 1) * math.factorial(2 * n - 2)
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("dimension formula did not divide exactly")
    return q


def _rank_exact(columns: dict[int, dict[int, int]], nrows: int) -> int:
    """Rank over Q of a sparse integer matrix given column-wise."""
    rows: list[list[Fraction]] = [[Fraction(0)] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns.values()):
        for i, v in col.items():
            rows[i][j] = Fraction(v)
    rank = 0
    for col in range(len(columns)):
        pivot = None
        for r in range(rank, nrows):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, nrows):
            if rows[r][col] != 0:
                factor = rows[r][col] / pv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def harmonic_dim_bruteforce(n: int, m: int) -> int:
    """Dimension of bidegree-(m,m) harmonic polynomials on C^(2n), by brute
    force: monomial count minus the exact rank of the Laplacian map

        p  |->  sum_j d^2 p / (dz_j dzbar_j)

    from bidegree (m,m) to (m-1,m-1), over exact rationals.  Limited to
    small instances (m <= 4, n <= 3)."""
    if n > _BRUTEFORCE_MAX_N or m > _BRUTEFORCE_MAX_M:
        raise ValueError(
            f"brute-force oracle limited to n <= {_BRUTEFORCE_MAX_N}, "
            f"m <= {_BRUTEFORCE_MAX_M}")
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    nvars = 2 * n
    monos = _monomials(nvars, m)
    total = len(monos) ** 2
    if m == 0:
        return total
    # The Laplacian preserves a - b (componentwise), so it block-diagonalises
    # over that difference vector; ranks are summed per block.
    blocks: dict[tuple, dict[int, dict[int, int]]] = {}
    block_rows: dict[tuple, dict[tuple, int]] = {}
    col_counter: dict[tuple, int] = {}
    for a in monos:
        for b in monos:
            d = tuple(ai - bi for ai, bi in zip(a, b))
            col_entries: dict[int, int] = {}
            rows = block_rows.setdefault(d, {})
            for j in range(nvars):
                if a[j] > 0 and b[j] > 0:
                    a2 = a[:j] + (a[j] - 1,) + a[j + 1:]
                    b2 = b[:j] + (b[j] - 1,) + b[j + 1:]
                    key = (a2, b2)
                    if key not in rows:
                        rows[key] = len(rows)
                    col_entries[rows[key]] = col_entries.get(rows[key], 0) + a[j] * b[j]
            if col_entries:
                cols = blocks.setdefault(d, {})
                cols[col_counter.get(d, 0)] = col_entries
                col_counter[d] = col_counter.get(d, 0) + 1
    rank = 0
    for d, cols in blocks.items():
        rank += _rank_exact(cols, len(block_rows[d]))
    return total - rank


def _monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree."""
    out = []
    for cut in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for c in cut:
            e[c] += 1
        out.append(tuple(e))
    return out


def _rising_frac(a: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= a + i
    return out


@dataclass(frozen=True)
class DimFactorizationReport:
    fact1_holds: bool
    fact2_holds: bool
    dimsum_matches: bool
    dim_value: int

    @property
    def all_hold(self) -> bool:
        return self.fact1_holds and self.fact2_holds and self.dimsum_matches


def dim_factorization_report(n: int, m: int) -> DimFactorizationReport:
    """Exact (rational-arithmetic) verification of the Pochhammer
    factorizations behind the dimension formula:

        (2m+2n-1)/(2n-1) = (n+1/2)_m / (n-1/2)_m
        (m+1)_{2n-2}/G(2n-1) = G(m+2n-1)/(G(m+1) G(2n-1)) = (2n-1)_m / G(m+1)

    and of the resulting multiplicity expression

        (2n-1)_m (2n-1)_m (n+1/2)_m / (m! (1)_m (n-1/2)_m) = dim_sum(n, m).
    """
    half = Fraction(1, 2)
    lhs1 = Fraction(2 * m + 2 * n - 1, 2 * n - 1)
    rhs1 = _rising_frac(n + half, m) / _rising_frac(n - half, m)
    fact1 = lhs1 == rhs1

    g2n1 = math.factorial(2 * n - 2)          # Gamma(2n-1)
    lhs2 = Fraction(_rising_int(m + 1, 2 * n - 2), g2n1)
    mid2 = Fraction(math.factorial(m + 2 * n - 2),
                    math.factorial(m) * g2n1)
    rhs2 = Fraction(_rising_int(2 * n - 1, m), math.factorial(m))
    fact2 = lhs2 == mid2 == rhs2

    ds = (Fraction(_rising_int(2 * n - 1, m)) ** 2 * _rising_frac(n + half, m)
          / (Fraction(math.factorial(m)) * _rising_int(1, m)
             * _rising_frac(n - half, m)))
    dim = dim_sum(n, m)
    return DimFactorizationReport(fact1, fact2, ds == dim, dim)


def highest_weight_eval(n: int, l: int, l_prime: int,
                        point: Sequence[complex]) -> complex:
    """Value of the highest-weight polynomial of V^{l,l'} at a point of
    C^(2n), the point given as (z_1..z_n, w_1..w_n):

        (z_1 wbar_1)^((l-l')/2) (z_2 wbar_1 - z_1 wbar_2)^(l')
    """
    pt = np.asarray(point, dtype=complex)
    if pt.shape != (2 * n,):
        raise ValueError(f"point must have 2n = {2 * n} complex entries")
    z, w = pt[:n], pt[n:]
    out = highest_weight_eval_batch(n, l, l_prime, z[None, :], w[None, :])
    return complex(out[0])


def highest_weight_eval_batch(n: int, l: int, l_prime: int,
                              z: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Vectorised highest-weight values for rows of z- and w-coordinates."""
    if not (l >= l_prime >= 0) or (l - l_prime) % 2 != 0:
        raise ValueError("K-type labels require l >= l' >= 0 and l = l' (mod 2)")
    if l_prime > 0 and n < 2:
        raise ValueError("types with l' > 0 require n >= 2")
    first = z[:, 0] * np.conj(w[:, 0])
    out = first ** ((l - l_prime) // 2)
    if l_prime > 0:
        pair = z[:, 1] * np.conj(w[:, 0]) - z[:, 0] * np.conj(w[:, 1])
        out = out * pair ** l_prime
    return out

"""Real-coordinate symplectic geometry, sphere sampling, and Monte Carlo
estimators for the triple integral and the intertwiner eigenvalues.

Coordinates: a complex vector (z, w) in C^n x C^n is stored as the real
4n-vector (Re z, Re w, Im z, Im w).  In these coordinates the real part of
the symplectic form is Re w(x, y) = <x, Phi y> with Phi block-diagonal
[[J, 0], [0, -J]], J the standard 2n x 2n symplectic matrix.

Sampling is plain i.i.d. Monte Carlo over fixed-size batches; batch i draws
from the counter-based Philox stream jumped(i) of the run seed, so results
are bit-identical for a given (seed, samples, batch_size) regardless of how
many threads compute the batches.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kspectrum
from .core import TripleParams, convergence_domain, sphere_volume
from .exceptions import DomainError

__all__ = [
    "Estimate",
    "ComplexEstimate",
    "DEFAULT_BATCH_SIZE",
    "symplectic_matrix",
    "phi_matrix",
    "real_to_complex",
    "complex_to_real",
    "re_omega",
    "is_symplectic",
    "random_compact_symplectic",
    "sample_sphere",
    "estimate_triple_integral",
    "estimate_intertwiner_eigenvalue",
]

DEFAULT_BATCH_SIZE = 1 << 16


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo result; std_error is the sample standard deviation of the
    mean, accumulated by a numerically stable streaming combination."""

    mean: float
    std_error: float
    samples: int
    seed: int


@dataclass(frozen=True)
class ComplexEstimate:
    real: Estimate
    imag: Estimate


# ---------------------------------------------------------------------------
# geometry


def symplectic_matrix(n: int) -> np.ndarray:
    """The 2n x 2n matrix J = [[0, -I], [I, 0]] defining w(X, Y) = <X, J Y>."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = -np.eye(n)
    J[n:, :n] = np.eye(n)
    return J


def phi_matrix(n: int) -> np.ndarray:
    """The 4n x 4n real matrix with <x, Phi y> = Re w(x, y)."""
    J = symplectic_matrix(n)
    out = np.zeros((4 * n, 4 * n))
    out[:2 * n, :2 * n] = J
    out[2 * n:, 2 * n:] = -J
    return out


def _apply_phi(Y: np.ndarray, n: int) -> np.ndarray:
    y1, y2, y3, y4 = Y[..., :n], Y[..., n:2 * n], Y[..., 2 * n:3 * n], Y[..., 3 * n:]
    return np.concatenate([-y2, y1, y4, -y3], axis=-1)


def _re_omega_rows(X: np.ndarray, Y: np.ndarray, n: int) -> np.ndarray:
    return np.einsum("...j,...j->...", X, _apply_phi(Y, n))


def re_omega(x: Sequence[float], y: Sequence[float]) -> float:
    """Re w(x, y) for real 4n-vectors; antisymmetric in (x, y)."""
    xv = np.asarray(x, dtype=float)
    yv = np.asarray(y, dtype=float)
    if xv.shape != yv.shape or xv.ndim != 1 or xv.shape[0] % 4 != 0:
        raise ValueError("re_omega expects two real vectors of equal length 4n")
    n = xv.shape[0] // 4
    return float(_re_omega_rows(xv, yv, n))


def real_to_complex(x: np.ndarray) -> np.ndarray:
    """(..., 4n) real -> (..., 2n) complex, blocks (z, w)."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1] // 4
    if x.shape[-1] % 4 != 0:
        raise ValueError("real coordinate vectors must have length 4n")
    z = x[..., :n] + 1j * x[..., 2 * n:3 * n]
    w = x[..., n:2 * n] + 1j * x[..., 3 * n:]
    return np.concatenate([z, w], axis=-1)


def complex_to_real(zw: np.ndarray) -> np.ndarray:
    """(..., 2n) complex -> (..., 4n) real, inverse of real_to_complex."""
    zw = np.asarray(zw, dtype=complex)
    if zw.shape[-1] % 2 != 0:
        raise ValueError("complex coordinate vectors must have length 2n")
    n = zw.shape[-1] // 2
    z, w = zw[..., :n], zw[..., n:]
    return np.concatenate([z.real, w.real, z.imag, w.imag], axis=-1)


def is_symplectic(g: np.ndarray, tol: float = 1e-10) -> bool:
    """True iff gT J g = J entrywise within tol (g complex, even size)."""
    g = np.asarray(g)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2 != 0:
        raise ValueError("expected a square matrix of even size")
    n = g.shape[0] // 2
    J = symplectic_matrix(n)
    return bool(np.max(np.abs(g.T @ J @ g - J)) < tol)


def random_compact_symplectic(n: int, seed=0) -> np.ndarray:
    """Haar-distributed element of the compact symplectic group
    Sp(n) = Sp(n, C) cap U(2n), as a complex 2n x 2n matrix.

    A random quaternionic matrix is orthonormalised in its complex
    realisation: each accepted column u is paired with the antilinear twist
    J conj(u), and Gram-Schmidt projects against both members of every
    previous pair.  The result is unitary and satisfies gT J g = J.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    J = symplectic_matrix(n).astype(complex)
    basis: list[np.ndarray] = []
    cols: list[np.ndarray] = []
    for _ in range(n):
        v = rng.standard_normal(2 * n) + 1j * rng.standard_normal(2 * n)
        for _ in range(2):  # re-orthogonalisation pass for 1e-10 robustness
            for u in basis:
                v = v - u * np.vdot(u, v)
        v = v / np.linalg.norm(v)
        partner = J @ np.conj(v)
        basis.extend([v, partner])
        cols.append(v)
    g = np.empty((2 * n, 2 * n), dtype=complex)
    for k, v in enumerate(cols):
        g[:, k] = v
        g[:, n + k] = J @ np.conj(v)
    return g


# ---------------------------------------------------------------------------
# sampling and accumulation


def _batch_rng(seed: int, index: int) -> np.random.Generator:
    """Independent substream for one batch: Philox(key=seed) jumped index times."""
    return np.random.Generator(np.random.Philox(key=seed).jumped(index))


def _unit_rows(a: np.ndarray) -> np.ndarray:
    return a / np.linalg.norm(a, axis=1, keepdims=True)


def sample_sphere(dim: int, count: int, seed: int,
                  batch_size: int = DEFAULT_BATCH_SIZE) -> np.ndarray:
    """(count, dim) array of i.i.d. uniform points on S^(dim-1), via
    normalised standard Gaussians.  Sample j is a pure function of
    (seed, j, batch_size): batches are drawn from per-index substreams and
    prefixes are stable."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    out = np.empty((count, dim))
    done = 0
    index = 0
    while done < count:
        take = min(batch_size, count - done)
        g = _batch_rng(seed, index)
        block = g.standard_normal((batch_size, dim))[:take]
        out[done:done + take] = _unit_rows(block)
        done += take
        index += 1
    return out


def _combine(stats_list, n_channels: int):
    """Chan-style combination of per-batch (count, means, M2s) in list order."""
    tot = 0
    means = [0.0] * n_channels
    m2s = [0.0] * n_channels
    for count, bmeans, bm2s in stats_list:
        new_tot = tot + count
        for c in range(n_channels):
            delta = bmeans[c] - means[c]
            means[c] += delta * count / new_tot
            m2s[c] += bm2s[c] + delta * delta * tot * count / new_tot
        tot = new_tot
    return tot, means, m2s


def _run_batches(samples: int, batch_size: int, threads: int,
                 batch_fn: Callable[[int, int], tuple], n_channels: int):
    sizes = []
    left = samples
    while left > 0:
        sizes.append(min(batch_size, left))
        left -= batch_size
    indices = list(range(len(sizes)))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            stats = list(pool.map(batch_fn, indices, sizes))
    else:
        stats = [batch_fn(i, c) for i, c in zip(indices, sizes)]
    return _combine(stats, n_channels)


def _std_error(m2: float, count: int) -> float:
    if count < 2:
        return 0.0
    return math.sqrt(m2 / (count - 1) / count)


# ---------------------------------------------------------------------------
# estimators


def estimate_triple_integral(params: TripleParams, samples: int, seed: int,
                             batch_size: int = DEFAULT_BATCH_SIZE,
                             threads: int = 1,
                             force: bool = False) -> Estimate:
    """Plain Monte Carlo estimate of the triple sphere integral.

    The kernel |Re w(y,z)|^e1 |Re w(z,x)|^e2 |Re w(x,y)|^e3 (exponents
    t/2 - n) is averaged over i.i.d. uniform triples and scaled by
    vol(S^(4n-1))^3; the measure is unnormalised surface area.

    Exponents in (-1, 0) leave the integral convergent but can make the
    estimator variance infinite; such runs are refused unless force=True.
    """
    report = convergence_domain(params)
    if not report.convergent:
        raise DomainError(
            "integral diverges: requires alpha, beta, gamma > 2n - 2 = "
            f"{2 * params.n - 2}; kernel exponents {report.exponents} "
            "must all exceed -1")
    expo = report.exponents
    if any(e < 0 for e in expo):
        if not force:
            raise DomainError(
                f"kernel exponents {expo} in (-1, 0) give a convergent "
                "integral but possibly infinite estimator variance; pass "
                "force=True to sample anyway")
        warnings.warn("negative kernel exponents: reported std_error may be "
                      "unreliable (second moment may diverge)")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = params.n
    dim = 4 * n

    def batch_fn(index: int, count: int):
        g = _batch_rng(seed, index)
        xs = _unit_rows(g.standard_normal((count, dim)))
        ys = _unit_rows(g.standard_normal((count, dim)))
        zs = _unit_rows(g.standard_normal((count, dim)))
        k = np.ones(count)
        for e, (a, b) in zip(expo, ((ys, zs), (zs, xs), (xs, ys))):
            if e != 0.0:
                k = k * np.abs(_re_omega_rows(a, b, n)) ** e
        bm = float(k.mean())
        bm2 = float(((k - bm) ** 2).sum())
        return count, (bm,), (bm2,)

    tot, means, m2s = _run_batches(samples, batch_size, threads, batch_fn, 1)
    vol3 = sphere_volume(n) ** 3
    return Estimate(mean=vol3 * means[0],
                    std_error=vol3 * _std_error(m2s[0], tot),
                    samples=tot, seed=seed)


def estimate_intertwiner_eigenvalue(n: int, l: int, l_prime: int, lam: float,
                                    y: Sequence[float], samples: int, seed: int,
                                    batch_size: int = DEFAULT_BATCH_SIZE,
                                    threads: int = 1) -> ComplexEstimate:
    """Monte Carlo quadrature of the kernel operator applied to the
    highest-weight polynomial p of V^{l,l'}, divided by p at the base point:

        (1/p(y)) * vol(S^(4n-1)) * E[ p(x) |Re w(x, y)|^(-lam-2n) ]

    over uniform x.  Converges to the spectral eigenvalue; real and
    imaginary parts are reported as separate estimates.  Requires
    -lam - 2n >= 0 (bounded kernel) and p(y) != 0.
    """
    kexp = -lam - 2 * n
    if kexp < 0:
        raise DomainError(
            f"kernel exponent -lambda - 2n = {kexp:g} is negative; the "
            "estimator variance blows up, refusing")
    yv = np.asarray(y, dtype=float)
    if yv.shape != (4 * n,):
        raise ValueError(f"base point must be a real vector of length {4 * n}")
    if abs(np.linalg.norm(yv) - 1.0) > 1e-10:
        raise ValueError("base point must lie on the unit sphere")
    zw = real_to_complex(yv)
    p_y = kspectrum.highest_weight_eval(n, l, l_prime, zw)
    if p_y == 0:
        raise DomainError("highest-weight polynomial vanishes at the base point")
    scale = sphere_volume(n) / p_y
    dim = 4 * n

    def batch_fn(index: int, count: int):
        g = _batch_rng(seed, index)
        xs = _unit_rows(g.standard_normal((count, dim)))
        z = xs[:, :n] + 1j * xs[:, 2 * n:3 * n]
        w = xs[:, n:2 * n] + 1j * xs[:, 3 * n:]
        p = kspectrum.highest_weight_eval_batch(n, l, l_prime, z, w)
        k = np.abs(_re_omega_rows(xs, np.broadcast_to(yv, xs.shape), n))
        vals = p * (k ** kexp if kexp != 0.0 else 1.0) * scale
        out = []
        for arr in (vals.real, vals.imag):
            bm = float(arr.mean())
            out.append((bm, float(((arr - bm) ** 2).sum())))
        return count, (out[0][0], out[1][0]), (out[0][1], out[1][1])

    tot, means, m2s = _run_batches(samples, batch_size, threads, batch_fn, 2)
    return ComplexEstimate(
        real=Estimate(means[0], _std_error(m2s[0], tot), tot, seed),
        imag=Estimate(means[1], _std_error(m2s[1], tot), tot, seed),
    )

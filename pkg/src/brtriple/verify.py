"""Verification suites: every acceptance-grade check behind the CLI `verify`
command, each reporting a measured error against its pinned tolerance.

The same registry backs the test suite, so `brtriple verify --level full`
and the acceptance tests agree by construction.  Levels differ only in
Monte Carlo sample counts (quick: 1e5, full: 1e7).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import core, geometry_mc, identities, kspectrum
from .core import TripleParams
from .special_functions import SignedLogValue, log_gamma_signed, pochhammer

__all__ = ["CheckResult", "VerificationReport", "run_verification",
           "DEFAULT_SEED", "QUICK_MC_SAMPLES", "FULL_MC_SAMPLES"]

# Fixed default seed for reproducible verification runs.
DEFAULT_SEED = 0xB351

QUICK_MC_SAMPLES = 10**5
FULL_MC_SAMPLES = 10**7


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""


@dataclass
class VerificationReport:
    level: str
    seed: int
    checks: list[CheckResult] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


# ---------------------------------------------------------------------------
# criterion 1: volume identity


def check_volume_identity() -> CheckResult:
    """closed_form(n, 2n, 2n, 2n) = vol(S^(4n-1))^3 for n = 1..4."""
    worst = 0.0
    for n in range(1, 5):
        got = core.closed_form(TripleParams(n, 2 * n, 2 * n, 2 * n)).value
        ref = core.sphere_volume(n) ** 3
        worst = max(worst, _rel(got, ref))
    return CheckResult("volume_identity", worst < 1e-12, worst, 1e-12,
                       "closed form vs sphere-volume cube, n = 1..4")


# ---------------------------------------------------------------------------
# criterion 2: rank-1 triangle


def check_rank1_triangle(seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(20):
        mu = tuple(rng.uniform(-5.0, -2.0, size=3))
        params = TripleParams.from_mu(1, *mu)
        closed = core.closed_form(params).value
        trace = core.trace_value(params)
        reduced = core.closed_form_n1(mu).value
        worst = max(worst, _rel(closed, trace), _rel(closed, reduced),
                    _rel(trace, reduced))
    spot = core.closed_form_n1((-3.0, -3.0, -3.0)).value
    spot_err = _rel(spot, 15 * math.pi**5 / 8)
    worst = max(worst, spot_err)
    return CheckResult("rank1_triangle", worst < 1e-9, worst, 1e-9,
                       "closed form vs trace series vs rank-1 reduction, "
                       f"spot 15*pi^5/8 err {spot_err:.2e}")


# ---------------------------------------------------------------------------
# criterion 3: rank-2 triangle with discrepancy detection


def check_rank2_triangle(seed: int) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    worst = 0.0
    for _ in range(20):
        a, b, g = rng.uniform(5.0, 9.0, size=3)
        params = TripleParams(2, a, b, g)
        closed = core.closed_form(params).value
        trace = core.trace_value(params)
        full = core.closed_form_n2(a, b, g).value
        worst = max(worst, _rel(closed, trace), _rel(closed, full))
        # the truncated variant deviates by exactly the dropped Gamma factors
        truncated = core.closed_form_n2_truncated(a, b, g).value
        gammas = math.exp(sum(math.lgamma((t - 2) / 4) for t in (a, b, g)))
        worst = max(worst, _rel(closed / truncated, gammas))
    return CheckResult("rank2_triangle", worst < 1e-9, worst, 1e-9,
                       "closed form vs trace vs rank-2 reduction; truncated "
                       "variant off by G((t-2)/4) factors")


# ---------------------------------------------------------------------------
# criterion 4: identity suites


def check_identity_dougall(seed: int) -> CheckResult:
    rng = np.random.default_rng(seed + 2)
    worst = 0.0
    for _ in range(100):
        x, y, z = rng.uniform(-0.1, 0.45, size=3)
        rep = identities.check_identity(
            "dougall", identities.DougallRamanujanInstance(2.0, x, y, z))
        worst = max(worst, rep.rel_error)
    return CheckResult("identity_dougall", worst < 1e-9, worst, 1e-9,
                       "5F4 series vs Gamma quotient, 100 random instances")


def check_identity_fatawat_vyas(seed: int) -> CheckResult:
    rng = np.random.default_rng(seed + 3)
    worst = 0.0
    count = 0
    while count < 100:
        f = rng.uniform(3.5, 4.5)
        u, v, w = rng.uniform(-1.2, 0.3, size=3)
        if abs(u) < 0.05:  # u bounded away from 0 (h = f(f-2)/(4u))
            continue
        rep = identities.check_identity(
            "fatawat_vyas", identities.FatawatVyasInstance(f, u, v, w))
        worst = max(worst, rep.rel_error)
        count += 1
    spot = identities.check_identity(
        "fatawat_vyas", identities.FatawatVyasInstance(4.0, -0.5, -0.5, -0.5))
    worst = max(worst, spot.rel_error,
                _rel(spot.lhs, 0.979333028580355489))
    return CheckResult("identity_fatawat_vyas", worst < 1e-9, worst, 1e-9,
                       "6F5 series vs Gamma quotient * kappa, 100 random "
                       f"instances; spot both sides {spot.lhs:.9f}")


# ---------------------------------------------------------------------------
# criterion 5: Monte Carlo vs closed form


def _mc_z(params: TripleParams, samples: int, seed: int, threads: int) -> tuple[float, str]:
    est = geometry_mc.estimate_triple_integral(params, samples, seed,
                                               threads=threads)
    ref = core.closed_form(params).value
    z = (est.mean - ref) / est.std_error
    detail = (f"mc {est.mean:.6g} +- {est.std_error:.2g} vs closed form "
              f"{ref:.6g} ({samples:.0e} samples, z = {z:+.2f})")
    return z, detail


def check_mc_triple_n1(samples: int, seed: int, threads: int = 1) -> CheckResult:
    z, detail = _mc_z(TripleParams(1, 4.0, 4.0, 4.0), samples, seed, threads)
    return CheckResult("mc_triple_n1", abs(z) < 3.0, abs(z), 3.0, detail)


def check_mc_triple_n2(samples: int, seed: int, threads: int = 1) -> CheckResult:
    z, detail = _mc_z(TripleParams(2, 6.0, 6.0, 6.0), samples, seed, threads)
    return CheckResult("mc_triple_n2", abs(z) < 3.0, abs(z), 3.0, detail)


# ---------------------------------------------------------------------------
# criterion 6: intertwiner eigenvalue by quadrature


def _eigenvalue_base_point() -> np.ndarray:
    return np.array([1 / math.sqrt(2), 1 / math.sqrt(2), 0.0, 0.0])


def check_mc_eigenvalue(samples: int, seed: int, threads: int = 1) -> CheckResult:
    est = geometry_mc.estimate_intertwiner_eigenvalue(
        1, 2, 0, -3.0, _eigenvalue_base_point(), samples, seed, threads=threads)
    ref = -8 * math.pi / 15
    z = (est.real.mean - ref) / est.real.std_error
    return CheckResult("mc_eigenvalue", abs(z) < 3.0, abs(z), 3.0,
                       f"quadrature {est.real.mean:.5f} +- "
                       f"{est.real.std_error:.2g} vs -8*pi/15 = {ref:.5f}")


def check_mc_eigenvalue_control(samples: int, seed: int,
                                threads: int = 1) -> CheckResult:
    # At lambda = -2 the kernel exponent is 0 and the harmonic polynomial
    # averages to zero over the sphere.
    est = geometry_mc.estimate_intertwiner_eigenvalue(
        1, 2, 0, -2.0, _eigenvalue_base_point(), samples, seed, threads=threads)
    z = est.real.mean / est.real.std_error
    return CheckResult("mc_eigenvalue_control", abs(z) < 3.0, abs(z), 3.0,
                       f"quadrature {est.real.mean:.2e} +- "
                       f"{est.real.std_error:.2g} vs 0")


# ---------------------------------------------------------------------------
# criterion 7: dimension oracle and factorizations


def check_dimension_oracle() -> CheckResult:
    mismatches = 0
    for n in range(1, 4):
        for m in range(0, 5):
            if kspectrum.dim_sum(n, m) != kspectrum.harmonic_dim_bruteforce(n, m):
                mismatches += 1
    ok = mismatches == 0 and kspectrum.dim_sum(2, 1) == 15
    return CheckResult("dimension_oracle", ok, float(mismatches), 0.0,
                       "closed multiplicity formula vs exact Laplacian-rank "
                       "count, n <= 3, m <= 4")


def check_pochhammer_factorizations() -> CheckResult:
    bad = 0
    for n in range(1, 6):
        for m in range(0, 21):
            if not kspectrum.dim_factorization_report(n, m).all_hold:
                bad += 1
    return CheckResult("pochhammer_factorizations", bad == 0, float(bad), 0.0,
                       "exact rational factorization identities, n <= 5, m <= 20")


# ---------------------------------------------------------------------------
# criterion 8: property suites


def check_gamma_properties(seed: int) -> CheckResult:
    rng = np.random.default_rng(seed + 4)
    worst = 0.0
    # recurrence Gamma(x+1) = x Gamma(x), compared in signed-log space
    n_done = 0
    while n_done < 1000:
        x = rng.uniform(-50.0, 50.0)
        if abs(x - round(x)) < 1e-6:
            continue
        lhs = log_gamma_signed(x + 1)
        rhs = log_gamma_signed(x) * SignedLogValue.from_real(x)
        err = abs(math.expm1(lhs.log_magnitude - rhs.log_magnitude))
        if lhs.sign != rhs.sign:
            err = math.inf
        worst = max(worst, err)
        n_done += 1
    # duplication in Pochhammer form: (a)_2m = 2^2m (a/2)_m ((a+1)/2)_m
    for _ in range(200):
        a = rng.uniform(-10.0, 10.0)
        m = int(rng.integers(0, 21))
        lhs = pochhammer(a, 2 * m)
        rhs = 4.0**m * pochhammer(a / 2, m) * pochhammer((a + 1) / 2, m)
        worst = max(worst, _rel(lhs, rhs))
    return CheckResult("gamma_properties", worst < 1e-12, worst, 1e-12,
                       "Gamma recurrence and Pochhammer duplication")


def check_harmonicity() -> CheckResult:
    """Central finite differences of the flat complex Laplacian on the
    highest-weight polynomials vanish (step 1e-4, tolerance 1e-6)."""
    rng = np.random.default_rng(99)
    h = 1e-4
    worst = 0.0
    for (n, l, lp) in ((1, 2, 0), (1, 4, 0), (2, 1, 1), (2, 3, 1)):
        dim = 4 * n
        for _ in range(10):
            x = rng.uniform(-0.5, 0.5, size=dim)
            acc = 0.0
            p0 = kspectrum.highest_weight_eval(n, l, lp, geometry_mc.real_to_complex(x))
            for i in range(dim):
                step = np.zeros(dim)
                step[i] = h
                pp = kspectrum.highest_weight_eval(n, l, lp,
                                                   geometry_mc.real_to_complex(x + step))
                pm = kspectrum.highest_weight_eval(n, l, lp,
                                                   geometry_mc.real_to_complex(x - step))
                acc += (pp - 2 * p0 + pm) / h**2
            worst = max(worst, abs(acc) / 4.0)  # complex Laplacian = real/4
    return CheckResult("harmonicity", worst < 1e-6, worst, 1e-6,
                       "finite-difference Laplacian on highest-weight vectors")


def check_symplectic_invariance(seed: int) -> CheckResult:
    rng = np.random.default_rng(seed + 5)
    worst = 0.0
    n = 2
    for _ in range(50):
        g = geometry_mc.random_compact_symplectic(n, rng)
        x = rng.standard_normal(4 * n)
        y = rng.standard_normal(4 * n)
        x /= np.linalg.norm(x)
        y /= np.linalg.norm(y)
        before = geometry_mc.re_omega(x, y)
        gx = geometry_mc.complex_to_real(g @ geometry_mc.real_to_complex(x))
        gy = geometry_mc.complex_to_real(g @ geometry_mc.real_to_complex(y))
        worst = max(worst, abs(geometry_mc.re_omega(gx, gy) - before))
        if not geometry_mc.is_symplectic(g, 1e-10):
            worst = math.inf
    return CheckResult("symplectic_invariance", worst < 1e-10, worst, 1e-10,
                       "Re w invariance under 50 random compact-symplectic "
                       "elements")


def check_estimator_determinism(seed: int) -> CheckResult:
    params = TripleParams(1, 4.0, 4.0, 4.0)
    a = geometry_mc.estimate_triple_integral(params, 200000, seed, threads=1)
    b = geometry_mc.estimate_triple_integral(params, 200000, seed, threads=4)
    same = (a.mean == b.mean) and (a.std_error == b.std_error)
    return CheckResult("estimator_determinism", same, 0.0 if same else 1.0, 0.0,
                       "bit-identical estimates across thread counts")


# ---------------------------------------------------------------------------
# runner


def run_verification(level: str = "quick", seed: int = DEFAULT_SEED,
                     threads: int = 1) -> VerificationReport:
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    samples = FULL_MC_SAMPLES if level == "full" else QUICK_MC_SAMPLES
    t0 = time.perf_counter()
    checks = [
        check_volume_identity(),
        check_rank1_triangle(seed),
        check_rank2_triangle(seed),
        check_identity_dougall(seed),
        check_identity_fatawat_vyas(seed),
        check_mc_triple_n1(samples, seed, threads),
        check_mc_triple_n2(samples, seed, threads),
        check_mc_eigenvalue(samples, seed, threads),
        check_mc_eigenvalue_control(samples, seed, threads),
        check_dimension_oracle(),
        check_pochhammer_factorizations(),
        check_gamma_properties(seed),
        check_harmonicity(),
        check_symplectic_invariance(seed),
        check_estimator_determinism(seed),
    ]
    report = VerificationReport(level=level, seed=seed, checks=checks)
    report.wall_time = time.perf_counter() - t0
    return report

"""Well-poised summation theorems: closed right-hand sides and checkers.

Two unit-argument summation formulas are implemented:

* Dougall-Ramanujan for the very well-poised 5F4,

      5F4(m-1, (m+1)/2, -x, -y, -z; (m-1)/2, x+m, y+m, z+m; 1)
        = G(x+m) G(y+m) G(z+m) G(x+y+z+m) / (G(m) G(x+y+m) G(y+z+m) G(x+z+m))

* the Fatawat-Vyas extension of Dougall's theorem for a 6F5,

      6F5(f-1, f/2+1, (f+1)/2, u, v, w; f/2-1, (f-1)/2, f-u, f-v, f-w; 1)
        = G(f-u) G(f-v) G(f-w) G(f-u-v-w-1)
          / (G(f) G(f-v-w) G(f-u-v-1) G(f-u-w-1)) * kappa

  with kappa = (vw - h(1+u+v+w-f)) / (h (1+u+v-f)(1+u+w-f)) and
  h = f(f-2)/(4u).

`check_identity` pits each right-hand side against the generic series engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import SingularInstanceError
from .hypergeometric import EvalStatus, SeriesSpec, evaluate
from .special_functions import SignedLogValue, gamma_ratio

__all__ = [
    "DougallRamanujanInstance",
    "FatawatVyasInstance",
    "IdentityReport",
    "dougall_ramanujan_series_spec",
    "dougall_ramanujan_rhs",
    "fatawat_vyas_series_spec",
    "fatawat_vyas_kappa",
    "fatawat_vyas_kappa_limit",
    "fatawat_vyas_rhs",
    "check_identity",
]


@dataclass(frozen=True)
class DougallRamanujanInstance:
    m: float
    x: float
    y: float
    z: float


@dataclass(frozen=True)
class FatawatVyasInstance:
    f: float
    u: float
    v: float
    w: float


@dataclass(frozen=True)
class IdentityReport:
    lhs: float
    rhs: float
    rel_error: float
    series_status: EvalStatus
    terms_used: int


def dougall_ramanujan_series_spec(inst: DougallRamanujanInstance) -> SeriesSpec:
    m, x, y, z = inst.m, inst.x, inst.y, inst.z
    return SeriesSpec(
        numerators=[m - 1, (m + 1) / 2, -x, -y, -z],
        denominators=[(m - 1) / 2, x + m, y + m, z + m],
        argument=1.0,
    )


def dougall_ramanujan_rhs(inst: DougallRamanujanInstance) -> SignedLogValue:
    m, x, y, z = inst.m, inst.x, inst.y, inst.z
    return (gamma_ratio(x + m, x + y + m)
            * gamma_ratio(y + m, y + z + m)
            * gamma_ratio(z + m, x + z + m)
            * gamma_ratio(x + y + z + m, m))


def fatawat_vyas_series_spec(inst: FatawatVyasInstance) -> SeriesSpec:
    f, u, v, w = inst.f, inst.u, inst.v, inst.w
    return SeriesSpec(
        numerators=[f - 1, f / 2 + 1, (f + 1) / 2, u, v, w],
        denominators=[f / 2 - 1, (f - 1) / 2, f - u, f - v, f - w],
        argument=1.0,
    )


def fatawat_vyas_kappa(inst: FatawatVyasInstance) -> float:
    """The rational correction factor kappa; u must stay away from 0."""
    f, u, v, w = inst.f, inst.u, inst.v, inst.w
    if u == 0.0:
        raise SingularInstanceError(
            "h = f(f-2)/(4u) is undefined at u = 0; use fatawat_vyas_kappa_limit")
    h = f * (f - 2) / (4 * u)
    den = h * (1 + u + v - f) * (1 + u + w - f)
    if den == 0.0:
        raise SingularInstanceError(
            f"kappa denominator vanishes at (f, u, v, w) = {(f, u, v, w)}")
    return (v * w - h * (1 + u + v + w - f)) / den


def fatawat_vyas_kappa_limit(f: float, v: float, w: float) -> float:
    """h -> infinity limit of kappa as u -> 0: -(1+v+w-f)/((1+v-f)(1+w-f))."""
    den = (1 + v - f) * (1 + w - f)
    if den == 0.0:
        raise SingularInstanceError(
            f"kappa limit denominator vanishes at (f, v, w) = {(f, v, w)}")
    return -(1 + v + w - f) / den


def fatawat_vyas_rhs(inst: FatawatVyasInstance) -> SignedLogValue:
    f, u, v, w = inst.f, inst.u, inst.v, inst.w
    kappa = fatawat_vyas_kappa(inst)
    quotient = (gamma_ratio(f - u, f)
                * gamma_ratio(f - v, f - v - w)
                * gamma_ratio(f - w, f - u - v - 1)
                * gamma_ratio(f - u - v - w - 1, f - u - w - 1))
    return quotient * SignedLogValue.from_real(kappa)


def check_identity(which: str, inst, rel_tol: float = 1e-12,
                   max_terms: int = 10**6) -> IdentityReport:
    """Evaluate the series side and the Gamma side; report both and the gap.

    `which` is "dougall" or "fatawat_vyas".  Errors from either side (series
    divergence, singular kappa) propagate.
    """
    if which == "dougall":
        spec = dougall_ramanujan_series_spec(inst)
        rhs = dougall_ramanujan_rhs(inst)
    elif which == "fatawat_vyas":
        spec = fatawat_vyas_series_spec(inst)
        rhs = fatawat_vyas_rhs(inst)
    else:
        raise ValueError(f"unknown identity {which!r}")
    res = evaluate(spec, rel_tol=rel_tol, max_terms=max_terms)
    rhs_val = rhs.value
    scale = max(abs(res.value), abs(rhs_val))
    rel = 0.0 if scale == 0.0 else abs(res.value - rhs_val) / scale
    return IdentityReport(lhs=res.value, rhs=rhs_val, rel_error=rel,
                          series_status=res.status, terms_used=res.terms_used)

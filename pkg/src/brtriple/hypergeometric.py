"""Generic evaluator for generalized hypergeometric series pFq.

A series is the sum over k of

    (a_1)_k ... (a_p)_k / ((b_1)_k ... (b_q)_k) * z^k / k!

computed by the term recurrence with compensated (Neumaier) summation.
Unit-argument convergence for p = q+1 is decided by the classical parameter
sum criterion sum(b) - sum(a) > 0; a numerator that is a nonpositive integer
terminates the series exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .exceptions import InvalidSeriesError, SeriesDivergenceError
from .special_functions import is_nonpositive_integer

__all__ = [
    "SeriesSpec",
    "EvalResult",
    "Classification",
    "EvalStatus",
    "classify",
    "evaluate",
]


class Classification(enum.Enum):
    TERMINATING = "terminating"
    CONVERGENT_AT_UNIT = "convergent_at_unit"
    DIVERGENT_AT_UNIT = "divergent_at_unit"
    CONVERGENT_INSIDE_DISK = "convergent_inside_disk"


class EvalStatus(enum.Enum):
    CONVERGED = "converged"
    TERMINATED_EXACTLY = "terminated_exactly"
    MAX_TERMS_REACHED = "max_terms_reached"


@dataclass(frozen=True)
class SeriesSpec:
    """Parameters of a pFq series: numerators a_i, denominators b_j, argument z."""

    numerators: tuple[float, ...]
    denominators: tuple[float, ...]
    argument: float

    def __init__(self, numerators: Sequence[float], denominators: Sequence[float],
                 argument: float = 1.0):
        object.__setattr__(self, "numerators", tuple(float(a) for a in numerators))
        object.__setattr__(self, "denominators", tuple(float(b) for b in denominators))
        object.__setattr__(self, "argument", float(argument))

    @property
    def parameter_excess(self) -> float:
        """sum(denominators) - sum(numerators), the unit-argument criterion."""
        return math.fsum(self.denominators) - math.fsum(self.numerators)


@dataclass(frozen=True)
class EvalResult:
    value: float
    terms_used: int
    last_term_magnitude: float
    status: EvalStatus


def _termination_index(numerators: Sequence[float]) -> int | None:
    """Smallest N with some numerator snapping to -N, or None."""
    best = None
    for a in numerators:
        if is_nonpositive_integer(a):
            n = int(-round(a))
            if best is None or n < best:
                best = n
    return best


def _validate(spec: SeriesSpec) -> None:
    # A denominator at -M makes (b)_k vanish for k > M, which is only
    # acceptable if a numerator terminates the series at N <= M first.
    term_n = _termination_index(spec.numerators)
    for b in spec.denominators:
        if is_nonpositive_integer(b):
            m = int(-round(b))
            if term_n is None or term_n > m:
                raise InvalidSeriesError(
                    f"denominator parameter {b} is a nonpositive integer and no "
                    f"numerator terminates the series by k = {m}")


def classify(spec: SeriesSpec) -> Classification:
    """Classify convergence of the series at its argument.

    Terminating wins over everything else.  For p = q+1 at |z| = 1 the series
    converges (absolutely) iff the parameter excess is positive.  For p <= q
    the series is entire.  Errors: InvalidSeriesError on a denominator-pole
    violation.
    """
    _validate(spec)
    if _termination_index(spec.numerators) is not None:
        return Classification.TERMINATING
    p, q = len(spec.numerators), len(spec.denominators)
    az = abs(spec.argument)
    if p <= q:
        return (Classification.CONVERGENT_AT_UNIT if az >= 1.0
                else Classification.CONVERGENT_INSIDE_DISK)
    if p == q + 1:
        if az < 1.0:
            return Classification.CONVERGENT_INSIDE_DISK
        if az == 1.0 and spec.parameter_excess > 0.0:
            return Classification.CONVERGENT_AT_UNIT
        return Classification.DIVERGENT_AT_UNIT
    # p > q+1: nonterminating series only make sense at z = 0.
    if spec.argument == 0.0:
        return Classification.CONVERGENT_INSIDE_DISK
    return Classification.DIVERGENT_AT_UNIT


def _sorted_product(factors: list[float]) -> float:
    # Multiply in sorted order so the result is invariant under permutations
    # of the parameter lists (bit-identical output for shuffled specs).
    out = 1.0
    for f in sorted(factors):
        out *= f
    return out


def evaluate(spec: SeriesSpec, rel_tol: float = 1e-12,
             max_terms: int = 10**6) -> EvalResult:
    """Sum the series; refuses divergent specs.

    Stops on exact termination, after the running term has been below
    rel_tol * |partial sum| for 3 consecutive terms (one accidentally tiny
    term is common in alternating series), or at max_terms (reported via
    status, not an error).
    """
    cls = classify(spec)
    if cls is Classification.DIVERGENT_AT_UNIT:
        raise SeriesDivergenceError(
            f"series diverges at z = {spec.argument} "
            f"(parameter excess {spec.parameter_excess:g} <= 0)")

    # Snap near-integer nonpositive numerators so termination is exact.
    nums = [float(round(a)) if is_nonpositive_integer(a) else a
            for a in spec.numerators]
    dens = list(spec.denominators)
    z = spec.argument
    stop_at = _termination_index(nums)

    term = 1.0
    total = 1.0
    comp = 0.0  # Neumaier compensation
    small_streak = 0
    k = 0
    while True:
        if stop_at is not None and k == stop_at:
            return EvalResult(total + comp, k + 1, abs(term),
                              EvalStatus.TERMINATED_EXACTLY)
        if k + 1 >= max_terms:
            return EvalResult(total + comp, k + 1, abs(term),
                              EvalStatus.MAX_TERMS_REACHED)
        ratio_num = _sorted_product([a + k for a in nums]) * z
        ratio_den = _sorted_product([b + k for b in dens]) * (k + 1)
        term = term * ratio_num / ratio_den
        k += 1
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        if stop_at is not None:
            # Terminating series are always summed to the end: an interior
            # run of tiny terms must not preempt exact termination.
            continue
        if abs(term) < rel_tol * abs(total + comp):
            small_streak += 1
            if small_streak >= 3:
                return EvalResult(total + comp, k + 1, abs(term),
                                  EvalStatus.CONVERGED)
        else:
            small_streak = 0

"""Stress-test shock model validation against extreme-deviation bounds.

A shock model that quotes a tail factor of k sigmas is only self-consistent
if k covers the largest standardised deviation a(n, kappa) that its own
kurtosis admits over the n-point history used to estimate sigma.  This
module turns that comparison into verdict objects, locates the history
length at which a given tail factor is first breached, and applies the same
check to observed return series.

Population-moment conventions follow :mod:`tailbound.extreme_point`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .distributions import blr_tail_factor
from .errors import DegenerateDataError, DomainError
from .extreme_point import (
    feasible_kurtosis_range,
    oracle_moments,
    samuelson_bound,
    solve_extreme_point,
)

__all__ = [
    "ModelVerdict",
    "ReturnSeries",
    "EmpiricalVerdict",
    "required_tail_factor",
    "max_safe_history",
    "validate_model",
    "validate_blr",
    "empirical_validate",
    "DEFAULT_HISTORY_CEILING",
]

#: Search ceiling beyond which max_safe_history reports "unbounded" (None).
DEFAULT_HISTORY_CEILING = 10**9


@dataclass(frozen=True)
class ModelVerdict:
    """Outcome of checking a tail factor against the extreme-point bound.

    margin = tail_factor - required_a, and passed is exactly margin >= 0.
    max_safe_history is the largest history length that would still pass
    (None when no breach occurs below the search ceiling; 0 when even the
    smallest feasible history already fails).
    """

    tail_factor: float
    history_n: int
    kappa: float
    required_a: float
    margin: float
    passed: bool
    max_safe_history: int | None


def required_tail_factor(history_n: float, kappa: float) -> float:
    """Largest standardised deviation an (history_n, kappa) sample admits."""
    return solve_extreme_point(history_n, kappa).a


def _feasible_floor(kappa: float) -> int:
    """Smallest integer n >= 5 whose feasible kurtosis range contains kappa."""
    s = kappa + 3.0
    n = max(5, math.ceil(0.5 * (s + math.sqrt(s * s - 4.0 * s))))
    if kappa <= 1.25:  # lower endpoint n/(n-1) binds instead
        n = max(n, math.floor(kappa / (kappa - 1.0)) + 1)
    # feasibility in n is an up-set, so correct the ceil in both directions
    while kappa not in feasible_kurtosis_range(n):
        n += 1
    while n > 5 and kappa in feasible_kurtosis_range(n - 1):
        n -= 1
    return n


def max_safe_history(
    tail_factor: float, kappa: float, ceiling: int = DEFAULT_HISTORY_CEILING
) -> int | None:
    """Largest history length n whose bound still fits under tail_factor.

    The extreme deviation a(n, kappa) grows with n, so the answer is found
    by integer bisection between the feasibility floor and the ceiling.

    Returns None when a(ceiling, kappa) <= tail_factor (no violation below
    the ceiling) and 0 when even the smallest feasible history violates.

    Raises:
        DomainError: tail_factor <= 0 or kappa <= 1.
    """
    if not tail_factor > 0.0:
        raise DomainError(f"tail factor must be positive, got {tail_factor!r}")
    if not kappa > 1.0:
        raise DomainError(f"kurtosis must exceed 1, got {kappa!r}")
    lo = _feasible_floor(kappa)
    if lo > ceiling:
        raise DomainError(
            f"no feasible history length at or below the ceiling {ceiling}"
        )
    if required_tail_factor(lo, kappa) > tail_factor:
        return 0
    if required_tail_factor(ceiling, kappa) <= tail_factor:
        return None
    hi = ceiling  # invariant: a(lo) <= tail_factor < a(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if required_tail_factor(mid, kappa) <= tail_factor:
            lo = mid
        else:
            hi = mid
    return lo


def validate_model(tail_factor: float, history_n: int, kappa: float) -> ModelVerdict:
    """Check a quoted tail factor against the bound for its own history.

    Raises:
        DomainError: non-positive tail factor, history below 5.
        InfeasibleKurtosisError: kappa infeasible at history_n.
    """
    if not tail_factor > 0.0:
        raise DomainError(f"tail factor must be positive, got {tail_factor!r}")
    required = required_tail_factor(history_n, kappa)
    margin = tail_factor - required
    return ModelVerdict(
        tail_factor=tail_factor,
        history_n=int(history_n),
        kappa=kappa,
        required_a=required,
        margin=margin,
        passed=margin >= 0.0,
        max_safe_history=max_safe_history(tail_factor, kappa),
    )


def validate_blr(g_inverse_label: str, kappa: float, history_n: int) -> ModelVerdict:
    """Validate a published BLR tail factor for the given history length.

    Raises:
        TableLookupError: unknown mean-reversion label or kurtosis column.
    """
    return validate_model(blr_tail_factor(g_inverse_label, kappa), history_n, kappa)


@dataclass(frozen=True)
class ReturnSeries:
    """Observed return series with its population statistics.

    sigma is the population standard deviation (divisor n) and
    max_abs_deviation_in_sigmas the realised extreme |x - mean|/sigma.
    """

    values: tuple[float, ...]
    n: int
    mean: float
    sigma: float
    kurtosis: float
    max_abs_deviation_in_sigmas: float

    @classmethod
    def from_values(cls, values: Iterable[float]) -> "ReturnSeries":
        vals = tuple(float(x) for x in values)
        if len(vals) < 5:
            raise DegenerateDataError(
                f"too few observations: need at least 5, got {len(vals)}"
            )
        m = oracle_moments(vals)  # raises DegenerateDataError on zero spread
        sigma = math.sqrt(m.variance)
        worst = max(abs(x - m.mean) for x in vals) / sigma
        return cls(
            values=vals,
            n=len(vals),
            mean=m.mean,
            sigma=sigma,
            kurtosis=m.kurtosis,
            max_abs_deviation_in_sigmas=worst,
        )


@dataclass(frozen=True)
class EmpiricalVerdict:
    """Verdict for a tail factor judged against an observed series.

    historical_breach flags a realised deviation already above the tail
    factor (hard fail); kurtosis_infeasible flags that the observed
    kurtosis fell outside the configuration's feasible range, in which case
    the kurtosis-free Samuelson bound sqrt(n-1) was used as the threshold
    and no max-safe-history is reported.
    """

    verdict: ModelVerdict
    series: ReturnSeries
    historical_breach: bool
    kurtosis_infeasible: bool

    @property
    def passed(self) -> bool:
        return self.verdict.passed and not self.historical_breach


def empirical_validate(
    series: ReturnSeries | Sequence[float], tail_factor: float
) -> EmpiricalVerdict:
    """Judge a tail factor against an observed return series.

    The threshold is a(n, observed kurtosis) when that kurtosis is feasible
    for the extremal configuration; otherwise the Samuelson bound is the
    fallback and the verdict is flagged kurtosis_infeasible.

    Raises:
        DomainError: non-positive tail factor.
        DegenerateDataError: fewer than 5 observations or zero variance.
    """
    if not isinstance(series, ReturnSeries):
        series = ReturnSeries.from_values(series)
    if not tail_factor > 0.0:
        raise DomainError(f"tail factor must be positive, got {tail_factor!r}")

    rng = feasible_kurtosis_range(series.n)
    infeasible = series.kurtosis not in rng
    if infeasible:
        required = samuelson_bound(series.n)
        safe_history = None
    else:
        required = required_tail_factor(series.n, series.kurtosis)
        safe_history = max_safe_history(tail_factor, series.kurtosis)

    margin = tail_factor - required
    verdict = ModelVerdict(
        tail_factor=tail_factor,
        history_n=series.n,
        kappa=series.kurtosis,
        required_a=required,
        margin=margin,
        passed=margin >= 0.0,
        max_safe_history=safe_history,
    )
    return EmpiricalVerdict(
        verdict=verdict,
        series=series,
        historical_breach=series.max_abs_deviation_in_sigmas > tail_factor,
        kurtosis_infeasible=infeasible,
    )

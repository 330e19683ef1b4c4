"""Statistical machinery for the Monte Carlo harness.

Three tools cover every verification mode used downstream: ordinary
least-squares slope fits on log-log data (convergence/divergence rates),
a one-sample Kolmogorov-Smirnov test against a fully specified centered
normal law (the variance comes from theory, never from the sample), and
Pearson-correlation bands as a finite-dimensional independence proxy.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy import stats as spstats

from .errors import (
    DomainError,
    InsufficientDataError,
    UndefinedCorrelationError,
    UnsupportedLawError,
)

__all__ = [
    "RateFit",
    "rate_regression",
    "LawKind",
    "LimitLawDescriptor",
    "ks_test",
    "CorrelationBand",
    "independence_check",
]


# ---------------------------------------------------------------------------
# Log-log rate regression
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RateFit:
    """OLS fit of log(value) against log(n)."""

    slope: float
    intercept: float
    residual: float  # RMS of the log-scale fit residuals

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "residual": self.residual,
        }


def rate_regression(pairs: Sequence[tuple[float, float]]) -> RateFit:
    """Fit log(value) = slope*log(n) + intercept by ordinary least squares.

    Args:
        pairs: (n, value) points; needs at least 4 of them, all values > 0.

    Returns:
        RateFit with the slope, intercept and RMS residual in log space.
    """
    if len(pairs) < 4:
        raise InsufficientDataError(
            f"rate regression needs at least 4 sizes, got {len(pairs)}"
        )
    ns = np.asarray([p[0] for p in pairs], dtype=float)
    vals = np.asarray([p[1] for p in pairs], dtype=float)
    if np.any(vals <= 0.0) or not np.all(np.isfinite(vals)):
        raise DomainError("rate regression requires positive finite statistics")
    x = np.log(ns)
    y = np.log(vals)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return RateFit(
        slope=float(slope),
        intercept=float(intercept),
        residual=float(np.sqrt(np.mean(resid**2))),
    )


# ---------------------------------------------------------------------------
# Limit-law descriptors and the KS test
# ---------------------------------------------------------------------------

class LawKind(enum.Enum):
    DEGENERATE = "degenerate"
    CENTERED_NORMAL = "centered_normal"
    MIXED_NORMAL = "mixed_normal"
    DIVERGENT = "divergent"


@dataclass(frozen=True)
class LimitLawDescriptor:
    """What the replicated statistic should converge to.

    kind=degenerate: a constant (L^2/probability limit).
    kind=centered_normal: N(0, variance) with a theoretically known variance.
    kind=mixed_normal: conditionally Gaussian; `second_moment` carries the
        unconditional second moment when a closed form or oracle exists.
    kind=divergent: no limit; `rate_exponent` is the growth rate of the
        standard deviation in log-log scale.
    """

    kind: LawKind
    constant: float | None = None
    variance: float | None = None
    second_moment: float | None = None
    rate_exponent: float | None = None

    def __post_init__(self) -> None:
        if self.kind is LawKind.CENTERED_NORMAL:
            if self.variance is None or self.variance <= 0.0:
                raise DomainError("centered_normal law needs variance > 0")
        if self.kind is LawKind.DEGENERATE and self.constant is None:
            raise DomainError("degenerate law needs its constant")
        if self.kind is LawKind.DIVERGENT and self.rate_exponent is None:
            raise DomainError("divergent law needs a rate exponent")

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind.value}
        for key in ("constant", "variance", "second_moment", "rate_exponent"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


def ks_test(samples: np.ndarray, law: LimitLawDescriptor) -> tuple[float, float]:
    """One-sample KS statistic and asymptotic p-value against N(0, variance).

    The variance is taken from the law descriptor, not estimated from the
    sample, so the test is sensitive to scale errors as well as shape.
    """
    if law.kind is not LawKind.CENTERED_NORMAL:
        raise UnsupportedLawError(
            f"ks_test supports centered_normal laws only, got {law.kind.value}"
        )
    samples = np.asarray(samples, dtype=float)
    if samples.size < 100:
        raise InsufficientDataError(
            f"ks_test needs at least 100 replications, got {samples.size}"
        )
    scale = math.sqrt(law.variance)
    result = spstats.kstest(samples, "norm", args=(0.0, scale), method="asymp")
    return float(result.statistic), float(result.pvalue)


# ---------------------------------------------------------------------------
# Independence proxy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrelationBand:
    """Pearson correlation with its +-3/sqrt(reps) acceptance band."""

    correlation: float
    band: float

    @property
    def passed(self) -> bool:
        return abs(self.correlation) <= self.band

    def to_dict(self) -> dict:
        return {
            "correlation": self.correlation,
            "band": self.band,
            "passed": self.passed,
        }


def independence_check(
    samples: np.ndarray, path_functionals: Mapping[str, np.ndarray]
) -> dict[str, CorrelationBand]:
    """Correlate a statistic with path functionals it should be independent of.

    Passing means every band contains zero; the caller inspects `.passed`.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.size < 2 or np.std(samples) == 0.0:
        raise UndefinedCorrelationError("statistic sample is constant")
    band = 3.0 / math.sqrt(samples.size)
    out: dict[str, CorrelationBand] = {}
    for name, values in path_functionals.items():
        values = np.asarray(values, dtype=float)
        if values.shape != samples.shape:
            raise DomainError(
                f"functional {name!r} has shape {values.shape}, "
                f"expected {samples.shape}"
            )
        if np.std(values) == 0.0:
            raise UndefinedCorrelationError(f"functional {name!r} is constant")
        corr = float(np.corrcoef(samples, values)[0, 1])
        out[name] = CorrelationBand(correlation=corr, band=band)
    return out

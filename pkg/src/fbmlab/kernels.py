"""Covariance kernel of fractional Brownian motion and its discrete inner products.

Everything lives on the canonical uniform grid {k/n}. With
R(t, s) = (t^{2H} + s^{2H} - |t-s|^{2H}) / 2 the two building blocks are

  <delta_k, delta_l> = n^{-2H} * rho(k - l)          (increment x increment)
  <eps_l,   delta_k> = (1/2) n^{-2H} * ((k+1)^{2H} - k^{2H}
                         - |k+1-l|^{2H} + |k-l|^{2H})  (level x increment)

where rho(j) = (|j+1|^{2H} + |j-1|^{2H} - 2|j|^{2H}) / 2 is the standardized
fractional-Gaussian-noise autocorrelation. The deterministic double/single
sums built from these inner products obey exact growth orders at H = 1/4;
`lemma31_sum` evaluates them and `lemma31_rate_fit` checks the orders.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from math import fsum
from typing import Sequence

import numpy as np

from .errors import DomainError, InsufficientDataError, UnsupportedRegimeError
from .stats import RateFit, rate_regression

__all__ = [
    "QUARTER",
    "Regime",
    "HurstIndex",
    "as_hurst",
    "GridSpec",
    "covariance_rh",
    "rho_h",
    "inner_delta_delta",
    "inner_eps_delta",
    "increment_correlation_matrix",
    "increment_covariance_matrix",
    "LEMMA31_PARTS",
    "lemma31_sum",
    "lemma31_order",
    "lemma31_rate_fit",
]

QUARTER = 0.25


class Regime(enum.Enum):
    """The three qualitative regimes of the Hurst index."""

    BELOW_QUARTER = "h<1/4"
    QUARTER = "h=1/4"
    ABOVE_QUARTER = "h>1/4"


@dataclass(frozen=True, order=True)
class HurstIndex:
    """Validated Hurst parameter, 0 < h < 1."""

    h: float

    def __post_init__(self) -> None:
        if not (0.0 < self.h < 1.0) or not math.isfinite(self.h):
            raise DomainError(f"Hurst index must lie in (0, 1), got {self.h}")

    @classmethod
    def quarter(cls) -> "HurstIndex":
        return cls(QUARTER)

    @property
    def regime(self) -> Regime:
        if self.h < QUARTER:
            return Regime.BELOW_QUARTER
        if self.h == QUARTER:
            return Regime.QUARTER
        return Regime.ABOVE_QUARTER

    @property
    def is_quarter(self) -> bool:
        return self.h == QUARTER

    def __float__(self) -> float:
        return self.h


def as_hurst(h: "HurstIndex | float") -> HurstIndex:
    """Coerce a float or HurstIndex into a validated HurstIndex."""
    if isinstance(h, HurstIndex):
        return h
    return HurstIndex(float(h))


@dataclass(frozen=True)
class GridSpec:
    """Uniform time grid: n steps on [0, horizon], times k*horizon/n."""

    n: int
    horizon: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise DomainError(f"grid needs an integer n >= 2, got {self.n!r}")
        if not (self.horizon > 0.0 and math.isfinite(self.horizon)):
            raise DomainError(f"grid horizon must be positive, got {self.horizon}")

    @property
    def step(self) -> float:
        return self.horizon / self.n

    def time(self, k: int) -> float:
        return k * self.horizon / self.n

    def times(self) -> np.ndarray:
        return np.arange(self.n + 1) * (self.horizon / self.n)


# ---------------------------------------------------------------------------
# Kernel and inner products
# ---------------------------------------------------------------------------

def covariance_rh(h, t, s):
    """Covariance R(t, s) = (t^{2H} + s^{2H} - |t-s|^{2H}) / 2.

    Accepts scalars or numpy arrays for t, s (broadcasting applies).
    """
    hh = as_hurst(h)
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    if np.any(t < 0.0) or np.any(s < 0.0):
        raise DomainError("covariance_rh requires nonnegative times")
    two_h = 2.0 * hh.h
    out = 0.5 * (t**two_h + s**two_h - np.abs(t - s) ** two_h)
    return out if out.ndim else float(out)


def rho_h(h, k):
    """Standardized fGn autocorrelation rho(k) = (|k+1|^{2H} + |k-1|^{2H} - 2|k|^{2H}) / 2.

    Even in k, equals 1 at k = 0, vanishes for |k| >= 1 when H = 1/2 and
    decays like |k|^{2H-2} otherwise.
    """
    hh = as_hurst(h)
    k = np.asarray(k, dtype=float)
    two_h = 2.0 * hh.h
    out = 0.5 * (
        np.abs(k + 1.0) ** two_h + np.abs(k - 1.0) ** two_h - 2.0 * np.abs(k) ** two_h
    )
    return out if out.ndim else float(out)


def _check_index(name: str, value: int, n: int) -> None:
    if not 0 <= value <= n - 1:
        raise DomainError(f"{name} must lie in [0, {n - 1}], got {value}")


def inner_delta_delta(h, k: int, l: int, n: int) -> float:
    """Increment-increment inner product <delta_{k/n}, delta_{l/n}> = n^{-2H} rho(k-l)."""
    hh = as_hurst(h)
    _check_index("k", k, n)
    _check_index("l", l, n)
    return float(n) ** (-2.0 * hh.h) * rho_h(hh, k - l)


def inner_eps_delta(h, l: int, k: int, n: int) -> float:
    """Level-increment inner product <eps_{l/n}, delta_{k/n}>.

    Equals E[B_{l/n} (B_{(k+1)/n} - B_{k/n})] for a 1D path of index h; it is
    exactly zero at l = 0.
    """
    hh = as_hurst(h)
    _check_index("l", l, n)
    _check_index("k", k, n)
    two_h = 2.0 * hh.h
    scale = 0.5 * float(n) ** (-two_h)
    return scale * (
        (k + 1.0) ** two_h
        - float(k) ** two_h
        - abs(k + 1.0 - l) ** two_h
        + abs(float(k - l)) ** two_h
    )


def increment_correlation_matrix(h, n: int) -> np.ndarray:
    """Toeplitz matrix rho(k - l) of the standardized increments, shape (n, n)."""
    hh = as_hurst(h)
    lags = rho_h(hh, np.arange(n))
    idx = np.abs(np.subtract.outer(np.arange(n), np.arange(n)))
    return lags[idx]


def increment_covariance_matrix(h, n: int) -> np.ndarray:
    """Full inner_delta_delta matrix n^{-2H} rho(k - l), shape (n, n)."""
    hh = as_hurst(h)
    return float(n) ** (-2.0 * hh.h) * increment_correlation_matrix(hh, n)


# ---------------------------------------------------------------------------
# Deterministic sum diagnostics
# ---------------------------------------------------------------------------

LEMMA31_PARTS = ("ii", "iii", "iv", "v")

# Exact growth exponent of each sum at H = 1/4. Parts "iv" (constant 1/2)
# and "iii" with r = 2 (bounded) have no meaningful slope and are validated
# by boundedness instead.
def lemma31_order(part: str, r: int | None = None) -> float:
    if part == "ii":
        return 1.0
    if part == "iii":
        if r is None or r < 1:
            raise DomainError("part iii needs an integer exponent r >= 1")
        return 1.0 - r / 2.0
    if part == "iv":
        return 0.0
    if part == "v":
        return -0.5
    raise DomainError(f"unknown part {part!r}; expected one of {LEMMA31_PARTS}")


def _eps_delta_row(two_h: float, scale: float, l: np.ndarray, k: np.ndarray) -> np.ndarray:
    """Vectorized |<eps_{l}, delta_{k}>| over a block of l (rows) and all k."""
    kk = k[np.newaxis, :]
    ll = l[:, np.newaxis]
    vals = scale * (
        (kk + 1.0) ** two_h
        - kk**two_h
        - np.abs(kk + 1.0 - ll) ** two_h
        + np.abs(kk - ll) ** two_h
    )
    return np.abs(vals)


def lemma31_sum(part: str, n: int, h=QUARTER, r: int | None = None) -> float:
    """Evaluate one of the four deterministic inner-product sums.

    part="ii":  sum_{k,l} |<eps_{l/n}, delta_{k/n}>|                 -- O(n)
    part="iii": sum_{k,l} |<delta_{l/n}, delta_{k/n}>|^r             -- O(n^{1-r/2})
    part="iv":  sum_k |<eps_{k/n}, delta_{k/n}> + 1/(2 sqrt n)|      -- = 1/2 exactly
    part="v":   sum_k |<eps_{k/n}, delta_{k/n}>^2 - 1/(4n)|          -- O(1/sqrt n)

    Parts "iv"/"v" center with constants specific to H = 1/4 and reject any
    other index; "ii"/"iii" accept a general Hurst index. Accumulation uses
    exact compensated summation (math.fsum) because part "v" subtracts nearly
    equal quantities and the rate fits are sensitive to cancellation.
    """
    hh = as_hurst(h)
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    two_h = 2.0 * hh.h
    if part == "ii":
        scale = 0.5 * float(n) ** (-two_h)
        k = np.arange(n, dtype=float)
        chunk = max(1, min(n, (1 << 21) // n))
        partials = []
        for start in range(0, n, chunk):
            l = np.arange(start, min(start + chunk, n), dtype=float)
            partials.append(float(np.sum(_eps_delta_row(two_h, scale, l, k))))
        return fsum(partials)
    if part == "iii":
        if r is None or r < 1:
            raise DomainError("part iii needs an integer exponent r >= 1")
        # sum_{k,l} f(k-l) collapses to sum over lags with multiplicity n-|j|
        j = np.arange(1, n, dtype=float)
        lag_terms = (n - j) * np.abs(rho_h(hh, j)) ** r
        diag = float(n)  # |rho(0)|^r = 1
        return float(n) ** (-two_h * r) * fsum([diag, 2.0 * fsum(lag_terms.tolist())])
    if part in ("iv", "v"):
        if not hh.is_quarter:
            raise UnsupportedRegimeError(
                f"part {part!r} centering is specific to H = 1/4, got H = {hh.h}"
            )
        k = np.arange(n, dtype=float)
        # <eps_k, delta_k> = (sqrt(k+1) - sqrt(k) - 1) / (2 sqrt n)
        eps_dd = (np.sqrt(k + 1.0) - np.sqrt(k) - 1.0) / (2.0 * math.sqrt(n))
        if part == "iv":
            terms = np.abs(eps_dd + 1.0 / (2.0 * math.sqrt(n)))
        else:
            terms = np.abs(eps_dd**2 - 1.0 / (4.0 * n))
        return fsum(terms.tolist())
    raise DomainError(f"unknown part {part!r}; expected one of {LEMMA31_PARTS}")


def lemma31_rate_fit(
    part: str, n_list: Sequence[int], h=QUARTER, r: int | None = None
) -> RateFit:
    """Log-log slope of lemma31_sum across grid sizes.

    Needs at least 4 sizes spanning >= 2 octaves. For parts whose exact order
    is O(1) the slope is reported but boundedness (max/min ratio) is the
    meaningful check; see lemma31_order.
    """
    if len(n_list) < 4:
        raise InsufficientDataError(
            f"need at least 4 grid sizes, got {len(n_list)}"
        )
    if max(n_list) < 4 * min(n_list):
        raise InsufficientDataError("grid sizes must span at least 2 octaves")
    values = [lemma31_sum(part, n, h=h, r=r) for n in n_list]
    return rate_regression(list(zip(n_list, values)))

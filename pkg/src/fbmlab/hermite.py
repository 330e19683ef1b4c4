"""Probabilists' Hermite polynomials and the weighted-variation constant sigma_H.

The convention is fixed by the generator formula
H_q(x) = (-1)^q e^{x^2/2} (d/dx)^q e^{-x^2/2}, i.e. H_2(x) = x^2 - 1,
H_3(x) = x^3 - 3x. Physicists' Hermite polynomials (weight e^{-x^2}) are
deliberately not offered; every decomposition downstream assumes the
standard-Gaussian weight.

sigma_H^2 = 2 * sum_{k in Z} rho_H(k)^2 is the limiting variance of the
normalized centered quadratic variation of fractional Gaussian noise; the
series converges iff H < 3/4. At H = 1/2 only the k = 0 term survives and
sigma = sqrt(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, NumericError, UnsupportedRegimeError
from .kernels import as_hurst, rho_h

__all__ = [
    "MAX_DEGREE",
    "hermite_eval",
    "HermiteCoeffs",
    "monomial_to_hermite",
    "SigmaResult",
    "sigma_h_detail",
    "sigma_h",
]

MAX_DEGREE = 32
_MAX_MONOMIAL = 8
_DEFAULT_TRUNCATION = 1_000_000
_MAX_TRUNCATION = 1 << 26


def hermite_eval(q: int, x):
    """Evaluate H_q(x) via the recurrence H_{q+1} = x H_q - q H_{q-1}.

    Accepts scalars or numpy arrays; q is capped at MAX_DEGREE.
    """
    if not isinstance(q, (int, np.integer)) or q < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {q!r}")
    if q > MAX_DEGREE:
        raise DomainError(f"degree {q} exceeds the recurrence cap {MAX_DEGREE}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if q == 0:
        return prev if prev.ndim else float(prev)
    cur = x.copy()
    for m in range(1, q):
        prev, cur = cur, x * cur - m * prev
    return cur if cur.ndim else float(cur)


@dataclass(frozen=True)
class HermiteCoeffs:
    """Coefficients c_q with x^degree = sum_q c_q H_q(x); zero off-parity."""

    degree: int
    coeffs: tuple[float, ...]

    def as_dict(self) -> dict[int, float]:
        return {q: c for q, c in enumerate(self.coeffs) if c != 0.0}


def monomial_to_hermite(p: int) -> HermiteCoeffs:
    """Expand x^p in the Hermite basis: c_{p-2m} = p! / (2^m m! (p-2m)!).

    The result is self-checked by evaluating both sides on a fixed 9-point
    grid to 1e-10 before returning.
    """
    if not isinstance(p, (int, np.integer)) or p < 0:
        raise DomainError(f"monomial degree must be a nonnegative integer, got {p!r}")
    if p > _MAX_MONOMIAL:
        raise DomainError(f"monomial degree {p} exceeds cap {_MAX_MONOMIAL}")
    coeffs = [0.0] * (p + 1)
    for m in range(p // 2 + 1):
        q = p - 2 * m
        coeffs[q] = math.factorial(p) / (2**m * math.factorial(m) * math.factorial(q))
    grid = np.linspace(-2.0, 2.0, 9)
    recon = sum(c * hermite_eval(q, grid) for q, c in enumerate(coeffs) if c != 0.0)
    if np.max(np.abs(recon - grid**p)) > 1e-10:
        raise NumericError(f"Hermite expansion self-check failed for p = {p}")
    return HermiteCoeffs(degree=p, coeffs=tuple(coeffs))


# ---------------------------------------------------------------------------
# The universal constant sigma_H
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaResult:
    """Value of sigma_H with its truncation certificate."""

    hurst: float
    value: float
    truncation: int
    value_at_k: float
    value_at_2k: float
    difference: float
    tail_bound: float
    tol: float

    def certificate(self) -> dict:
        return {
            "hurst": self.hurst,
            "truncation_k": self.truncation,
            "sigma_at_k": self.value_at_k,
            "sigma_at_2k": self.value_at_2k,
            "difference": self.difference,
            "tail_bound": self.tail_bound,
            "tol": self.tol,
        }


def _sigma_sq_partial(h: float, k_max: int) -> float:
    """2 * (rho(0)^2 + 2 sum_{k=1}^{k_max} rho(k)^2), summed in blocks."""
    total = 1.0  # rho(0)^2
    block = 1 << 20
    tail = 0.0
    for start in range(1, k_max + 1, block):
        k = np.arange(start, min(start + block, k_max + 1), dtype=float)
        tail += float(np.sum(rho_h(h, k) ** 2))
    return 2.0 * (total + 2.0 * tail)


def _sigma_sq_tail_bound(h: float, k_max: int) -> float:
    """Bound on the mass dropped beyond k_max.

    |rho(k)| <= H|2H-1| (k-1)^{2H-2} by two applications of the mean value
    theorem, so the squared tail is under an explicit integral bound; the
    series needs H < 3/4 (exponent 4H-4 < -1).
    """
    c = h * abs(2.0 * h - 1.0)
    if c == 0.0:  # H = 1/2: rho vanishes off zero
        return 0.0
    return 4.0 * c**2 * (k_max - 1.0) ** (4.0 * h - 3.0) / (3.0 - 4.0 * h)


def sigma_h_detail(h, tol: float = 1e-8, truncation: int = _DEFAULT_TRUNCATION) -> SigmaResult:
    """sigma_H with a two-truncation stability certificate.

    Doubles the truncation point until both the K-vs-2K difference and the
    analytic tail bound fall below tol; the value at 2K is returned.
    Results are cached per (H, tol, truncation).
    """
    hh = as_hurst(h)
    if hh.h >= 0.75:
        raise UnsupportedRegimeError(
            f"sigma_H series diverges for H >= 3/4, got H = {hh.h}"
        )
    if not (tol > 0.0):
        raise DomainError(f"tolerance must be positive, got {tol}")
    return _sigma_h_cached(hh.h, float(tol), int(truncation))


@lru_cache(maxsize=64)
def _sigma_h_cached(h: float, tol: float, truncation: int) -> SigmaResult:
    k = max(4, truncation)
    while True:
        sq_k = _sigma_sq_partial(h, k)
        sq_2k = _sigma_sq_partial(h, 2 * k)
        sigma_k = math.sqrt(sq_k)
        sigma_2k = math.sqrt(sq_2k)
        diff = abs(sigma_2k - sigma_k)
        tail = _sigma_sq_tail_bound(h, 2 * k) / (2.0 * sigma_2k)
        if diff < tol and tail < tol:
            return SigmaResult(
                hurst=h,
                value=sigma_2k,
                truncation=k,
                value_at_k=sigma_k,
                value_at_2k=sigma_2k,
                difference=diff,
                tail_bound=tail,
                tol=tol,
            )
        if 2 * k > _MAX_TRUNCATION:
            raise NumericError(
                f"sigma_H series did not stabilize to {tol} below "
                f"truncation {_MAX_TRUNCATION} (H = {h})"
            )
        k *= 2


def sigma_h(h, tol: float = 1e-8) -> float:
    """The constant sigma_H = sqrt(2 sum_{k in Z} rho_H(k)^2), for H < 3/4."""
    return sigma_h_detail(h, tol=tol).value

"""Exception types shared across the package.

The CLI maps these onto exit codes, so estimator and sampler code should
raise the most specific class that applies rather than bare ValueError.
"""

__all__ = [
    "FbmLabError",
    "DomainError",
    "UnsupportedRegimeError",
    "CapacityError",
    "NumericError",
    "EmbeddingError",
    "InsufficientDataError",
    "UnsupportedLawError",
    "UndefinedCorrelationError",
    "CatalogError",
    "FieldValidationError",
]


class FbmLabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FbmLabError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class UnsupportedRegimeError(FbmLabError, ValueError):
    """The requested Hurst regime is outside what the operation supports."""


class CapacityError(FbmLabError):
    """A configured resource cap (e.g. Cholesky size) would be exceeded."""


class NumericError(FbmLabError):
    """A numerical procedure failed (factorization, series convergence)."""


class EmbeddingError(NumericError):
    """Circulant embedding produced a materially negative eigenvalue."""


class InsufficientDataError(FbmLabError, ValueError):
    """Too few data points for the requested statistical procedure."""


class UnsupportedLawError(FbmLabError, ValueError):
    """The limit-law descriptor kind is not handled by this test."""


class UndefinedCorrelationError(FbmLabError, ValueError):
    """Correlation is undefined because one input is constant."""


class CatalogError(FbmLabError, KeyError):
    """Unknown test-function name."""


class FieldValidationError(FbmLabError):
    """A scalar field's analytic partial disagrees with finite differences."""

    def __init__(self, field_name, orders, point, discrepancy):
        self.field_name = field_name
        self.orders = orders
        self.point = point
        self.discrepancy = discrepancy
        super().__init__(
            f"field {field_name!r}: partial {orders} deviates from finite "
            f"difference by {discrepancy:.3e} at point {point}"
        )

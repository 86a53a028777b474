"""
Exceptions raised by the lab.

Every error derives from ChernoffLabError and from the builtin type that
best describes it, so callers may catch either.
"""

from typing import Dict, List, Optional


class ChernoffLabError(Exception):
    """Base class for all lab errors."""


class ProfileError(ChernoffLabError, ValueError):
    """A radial profile or body file is malformed."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        if location:
            message = f"{message} (at {location})"
        super().__init__(message)


class PositivityError(ProfileError):
    """The radial function is not strictly positive."""

    def __init__(self, argmin: float, value: float):
        self.argmin = argmin
        self.value = value
        super().__init__(
            f"radial function is not positive: rho({argmin:.12g}) = {value:.12g}"
        )


class UnderdeterminedFitError(ProfileError):
    """Too few distinct sample angles for the requested truncation order."""


class ParameterRangeError(ChernoffLabError, ValueError):
    """An inequality parameter (k, lambda, mu, alpha, nodes) is outside its range."""


class HypothesisError(ChernoffLabError, ValueError):
    """The body has nonzero harmonics where n/k is an even integer."""

    def __init__(self, k: int, indices: List[int]):
        self.k = k
        self.indices = list(indices)
        listed = ", ".join(str(n) for n in self.indices)
        super().__init__(
            f"hypothesis violated for k={k}: nonzero harmonics at n = {listed} "
            f"(n/k even); rerun with --project to zero them"
        )


class ClassificationError(ChernoffLabError, ValueError):
    """Equality classification was requested for a report that is not an equality."""


class OracleMismatchError(ChernoffLabError, ArithmeticError):
    """Closed form and quadrature oracle disagree beyond tolerance."""


class ConfigError(ChernoffLabError, ValueError):
    """A config file failed validation."""

    def __init__(self, message: str, errors: Optional[Dict[str, List[str]]] = None):
        self.errors = errors or {}
        if self.errors:
            details = "; ".join(
                f"{field}: {' '.join(messages)}" for field, messages in sorted(self.errors.items())
            )
            message = f"{message}: {details}"
        super().__init__(message)

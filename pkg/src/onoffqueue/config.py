"""Arithmetic backend selection and numerical tolerances."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[float, Fraction]

FLOAT64 = "float64"
EXACT = "exact"

_BACKEND_ALIASES = {
    "float64": FLOAT64,
    "exact": EXACT,
    "exact-rational": EXACT,
}


def canonical_backend(name: str) -> str:
    try:
        return _BACKEND_ALIASES[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; expected 'float64' or 'exact'"
        ) from None


def to_number(value, backend: str) -> Scalar:
    """Convert a raw parameter (string, int, float, Fraction) to the backend type.

    In exact mode decimal strings parse to exact rationals ("0.05" -> 1/20);
    floats convert by their exact binary value, so prefer strings or Fractions
    when exactness of decimal inputs matters.
    """
    if canonical_backend(backend) == EXACT:
        return Fraction(value)
    return float(Fraction(value)) if isinstance(value, str) else float(value)


@dataclass(frozen=True)
class NumericConfig:
    """Backend and tolerance knobs for distribution computations.

    backend: "float64" (fast, breaks down at tiny coefficients) or
        "exact" (rational arithmetic, never breaks down).
    negative_tolerance: a computed probability below -negative_tolerance
        flags numerical breakdown (float backend only); 0 means any
        strictly negative value counts.
    k_max: largest queue length whose probability is computed.
    """

    backend: str = FLOAT64
    negative_tolerance: float = 0.0
    k_max: int = 200

    def __post_init__(self):
        object.__setattr__(self, "backend", canonical_backend(self.backend))
        if self.k_max < 0:
            raise ValueError("k_max must be nonnegative")
        if self.negative_tolerance < 0:
            raise ValueError("negative_tolerance must be nonnegative")

    @property
    def is_exact(self) -> bool:
        return self.backend == EXACT

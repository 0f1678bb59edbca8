"""Uniformly sampled functions and overflow-safe hyperbolic helpers."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError

_LN2 = float(np.log(2.0))


class Branch(str, Enum):
    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"
    HALF_LINE = "half_line"


def as_branch(value) -> Branch:
    try:
        return Branch(value)
    except ValueError:
        raise DomainError(f"branch must be 'plus' or 'minus', got {value!r}") from None


def as_parity(value) -> Parity:
    if isinstance(value, str):
        value = value.replace("-", "_")
    try:
        return Parity(value)
    except ValueError:
        raise DomainError(f"parity must be even, odd or half_line, got {value!r}") from None


@dataclass(frozen=True)
class GridFunction:
    """Samples ``values[i]`` at ``coordinate_start + i * coordinate_step``."""

    coordinate_start: float
    coordinate_step: float
    values: np.ndarray
    coordinate_label: str = "tau"

    def __post_init__(self) -> None:
        if len(self.values) == 0:
            raise ValueError("GridFunction needs at least one sample")
        if not self.coordinate_step > 0:
            raise ValueError("coordinate_step must be positive")
        if self.coordinate_label not in ("tau", "alpha", "x"):
            raise ValueError(f"unknown coordinate label {self.coordinate_label!r}")

    @property
    def coordinates(self) -> np.ndarray:
        return self.coordinate_start + self.coordinate_step * np.arange(len(self.values))

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def from_points(cls, points, values, label: str = "tau") -> "GridFunction":
        points = np.atleast_1d(np.asarray(points, dtype=float))
        values = np.atleast_1d(np.asarray(values, dtype=float))
        if points.shape != values.shape or points.ndim != 1:
            raise ValueError("points and values must be matching 1-D arrays")
        if len(points) == 1:
            step = 1.0
        else:
            diffs = np.diff(points)
            step = float(points[-1] - points[0]) / (len(points) - 1)
            if step <= 0 or not np.allclose(diffs, step, rtol=1e-9, atol=1e-12 * abs(step)):
                raise DomainError("grid points must be uniformly increasing")
        return cls(float(points[0]), step, values, label)


def uniform_points(start: float, stop: float, count: int) -> np.ndarray:
    if count < 1:
        raise DomainError("need at least one grid point")
    if count == 1:
        return np.array([float(start)])
    return np.linspace(start, stop, count)


def log_sinh(t):
    """``ln sinh t`` for ``t >= 0``; ``-inf`` at 0, no overflow for large ``t``."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore"):
        small = np.log(np.sinh(np.minimum(t, 1.0)))
        large = t + np.log1p(-np.exp(-2.0 * t)) - _LN2
    return np.where(t < 1.0, small, large)


def log_cosh(t):
    """``ln cosh t``, even in ``t``, without overflow."""
    a = np.abs(np.asarray(t, dtype=float))
    # cosh a - 1 = 2 sinh(a/2)**2 keeps full relative accuracy for small a
    small = np.log1p(2.0 * np.sinh(0.5 * np.minimum(a, 1.0)) ** 2)
    large = a + np.log1p(np.exp(-2.0 * a)) - _LN2
    return np.where(a < 1.0, small, large)

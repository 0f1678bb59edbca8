"""Exactly solvable singular oscillator and singular Coulomb systems on H1."""

__version__ = "0.1.0"

from . import coulomb, oscillator, special, verify  # noqa: E402
from .coulomb import CoulombModel  # noqa: E402
from .errors import ConvergenceError, DomainError, InternalError, ModelError  # noqa: E402
from .grid import Branch, GridFunction, Parity  # noqa: E402
from .oscillator import OscillatorModel  # noqa: E402

__all__ = [
    "Branch",
    "ConvergenceError",
    "CoulombModel",
    "DomainError",
    "GridFunction",
    "InternalError",
    "ModelError",
    "OscillatorModel",
    "Parity",
    "coulomb",
    "oscillator",
    "special",
    "verify",
]

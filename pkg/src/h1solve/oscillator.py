"""Singular oscillator on the one-sheeted hyperbola H1.

The Schrodinger equation in the pseudospherical coordinate ``tau`` reduces to
the modified Poschl-Teller equation

    psi'' + [eps + (k0**2 - 1/4) / cosh(tau)**2 - (k**2 - 1/4) / sinh(tau)**2] psi = 0

with ``k0 = sqrt(omega**2 R**4 + 1/4)`` and ``eps = 2 R**2 E - omega**2 R**4``.
Units follow hbar = mass = 1. Bound states are normalized on the half line so
that ``R * integral_0^inf psi**2 dtau = 1/2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InternalError, ModelError
from .grid import (
    Branch,
    GridFunction,
    Parity,
    as_branch,
    as_parity,
    log_cosh,
    log_sinh,
)
from .special import hyp1f1_terminating, hyp2f1_terminating, log_gamma

__all__ = [
    "OscillatorModel",
    "BoundState",
    "potential",
    "ambient_potential",
    "reduced_potential",
    "regular_potential",
    "k0_of",
    "bound_state_count",
    "epsilon_n",
    "energy_n",
    "norm_constant",
    "wavefunction",
    "eval_wavefunction",
    "bound_states",
    "decay_rate",
    "quadrature_cutoff",
    "flat_energy",
    "flat_wavefunction",
    "flat_wavefunction_values",
]


@dataclass(frozen=True)
class OscillatorModel:
    """Parameters of the singular oscillator.

    ``branch="minus"`` selects the ``-k`` family and is only allowed for
    ``k <= 1/2``; for a repulsive inverse-square term the motion is confined
    to a half line and only the ``+k`` family is normalizable there.
    """

    omega: float
    radius: float
    k: float
    branch: Branch = Branch.PLUS

    def __post_init__(self) -> None:
        object.__setattr__(self, "branch", as_branch(self.branch))
        for name in ("omega", "radius", "k"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ModelError(f"{name} must be a positive finite number, got {value}")
        if self.branch is Branch.MINUS and self.k > 0.5:
            raise ModelError(f"branch 'minus' requires k <= 1/2, got k={self.k}")

    @property
    def k0(self) -> float:
        return math.sqrt((self.omega * self.radius**2) ** 2 + 0.25)

    @property
    def signed_k(self) -> float:
        return self.branch.sign * self.k

    @property
    def full_line(self) -> bool:
        """True when the inverse-square term is not repulsive at the origin."""
        return self.k <= 0.5

    def params(self) -> dict:
        return {"omega": self.omega, "radius": self.radius, "k": self.k, "branch": self.branch.value}


@dataclass(frozen=True)
class BoundState:
    n: int
    epsilon: float
    energy: float
    norm_constant: float
    parity: Parity = Parity.HALF_LINE


def k0_of(model: OscillatorModel) -> float:
    return model.k0


def _tau_array(tau):
    return np.asarray(tau, dtype=float)


def potential(model: OscillatorModel, tau):
    """Physical potential ``V(tau)`` including the constant ``omega**2 R**2 / 2``.

    Raises:
        DomainError: ``tau == 0`` while the inverse-square coefficient is nonzero.
    """
    t = _tau_array(tau)
    R = model.radius
    centrifugal = model.k**2 - 0.25
    if centrifugal != 0 and np.any(t == 0):
        raise DomainError("potential is singular at tau = 0 unless k = 1/2")
    sech2 = np.exp(-2.0 * log_cosh(t))
    out = -(model.k0**2 - 0.25) * sech2
    if centrifugal != 0:
        out = out + centrifugal * np.exp(-2.0 * log_sinh(np.abs(t)))
    out = out / (2.0 * R**2) + 0.5 * model.omega**2 * R**2
    return out if out.ndim else float(out)


def ambient_potential(model: OscillatorModel, s0, s1):
    """Potential written in the ambient coordinates ``s0**2 - s1**2 = R**2``."""
    s0 = np.asarray(s0, dtype=float)
    s1 = np.asarray(s1, dtype=float)
    if model.k != 0.5 and np.any(s1 == 0):
        raise DomainError("potential is singular at s1 = 0 unless k = 1/2")
    out = 0.5 * model.omega**2 * model.radius**2 * s1**2 / s0**2
    if model.k != 0.5:
        out = out + 0.5 * (model.k**2 - 0.25) / s1**2
    return out if out.ndim else float(out)


def reduced_potential(model: OscillatorModel, tau):
    """``U`` in ``-psi'' + U psi = eps psi`` (the Poschl-Teller well)."""
    t = _tau_array(tau)
    out = -(model.k0**2 - 0.25) * np.exp(-2.0 * log_cosh(t))
    c = model.k**2 - 0.25
    if c != 0:
        out = out + c * np.exp(-2.0 * log_sinh(np.abs(t)))
    return out if out.ndim else float(out)


def regular_potential(model: OscillatorModel, tau):
    """Part of :func:`reduced_potential` that stays finite at ``tau = 0``."""
    t = _tau_array(tau)
    out = -(model.k0**2 - 0.25) * np.exp(-2.0 * log_cosh(t))
    return out if out.ndim else float(out)


def _level(model: OscillatorModel, n) -> float:
    return 2 * n + 1 + model.signed_k


def bound_state_count(model: OscillatorModel) -> int:
    """Number of ``n >= 0`` with ``2n + 1 +- k < k0``.

    The marginal level ``2n + 1 +- k == k0`` has ``eps = 0`` and a vanishing
    normalization, so it is not counted.
    """
    gap = model.k0 - 1 - model.signed_k
    if gap <= 0:
        return 0
    count = math.ceil(gap / 2)
    # float guard around exact integers
    while count > 0 and _level(model, count - 1) >= model.k0:
        count -= 1
    while _level(model, count) < model.k0:
        count += 1
    return count


def _check_n(model: OscillatorModel, n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise IndexError(f"quantum number must be a nonnegative integer, got {n!r}")
    n = int(n)
    count = bound_state_count(model)
    if n >= count:
        raise IndexError(f"n={n} outside bound-state range 0..{count - 1}")
    return n


def epsilon_n(model: OscillatorModel, n: int) -> float:
    n = _check_n(model, n)
    return -((_level(model, n) - model.k0) ** 2)


def energy_n(model: OscillatorModel, n: int) -> float:
    n = _check_n(model, n)
    a = _level(model, n)
    return -(a * a - 2.0 * model.k0 * a + 0.25) / (2.0 * model.radius**2)


def decay_rate(model: OscillatorModel, n: int) -> float:
    """Exponential rate ``k0 - (2n + 1 +- k)`` of the large-``tau`` tail."""
    n = _check_n(model, n)
    return model.k0 - _level(model, n)


def quadrature_cutoff(model: OscillatorModel, n: int) -> float:
    return max(25.0, 40.0 / decay_rate(model, n))


def log_norm_constant(model: OscillatorModel, n: int) -> float:
    n = _check_n(model, n)
    k0, sk = model.k0, model.signed_k
    top = k0 - 2 * n - sk - 1
    if top <= 0:
        raise InternalError(f"normalization prefactor {top} is not positive")
    try:
        log_sq = (
            math.log(top)
            + log_gamma(k0 - n)
            + log_gamma(n + 1 + sk)
            - math.log(model.radius)
            - log_gamma(k0 - n - sk)
            - log_gamma(n + 1)
        )
        return 0.5 * log_sq - log_gamma(1 + sk)
    except DomainError as exc:
        raise InternalError(str(exc)) from exc


def norm_constant(model: OscillatorModel, n: int) -> float:
    return math.exp(log_norm_constant(model, n))


def _parity_checked(model_full_line: bool, parity) -> Parity:
    parity = as_parity(parity)
    if parity is not Parity.HALF_LINE and not model_full_line:
        raise DomainError("even/odd states need a non-repulsive singular term (k <= 1/2)")
    return parity


def _reflect(values_of_abs, t: np.ndarray, parity: Parity) -> np.ndarray:
    if parity is Parity.HALF_LINE:
        if np.any(t < 0):
            raise DomainError("half-line states are defined for tau >= 0 only")
        return values_of_abs(t)
    vals = values_of_abs(np.abs(t))
    if parity is Parity.ODD:
        vals = np.sign(t) * vals
    return vals


def _half_line_values(model: OscillatorModel, n: int, t: np.ndarray) -> np.ndarray:
    sk = model.signed_k
    p_sinh = 0.5 + sk
    p_cosh = 2 * n - model.k0 + 0.5
    log_mag = log_norm_constant(model, n) + p_cosh * log_cosh(t)
    if p_sinh != 0:
        log_mag = log_mag + p_sinh * log_sinh(t)
    tanh2 = np.tanh(t) ** 2
    poly = hyp2f1_terminating(n, model.k0 - n, 1 + sk, tanh2)
    return np.exp(log_mag) * poly


def wavefunction(model: OscillatorModel, n: int, tau, parity="half_line") -> np.ndarray:
    """Normalized bound-state wavefunction sampled at arbitrary ``tau``.

    ``half_line`` states obey ``R * int_0^inf psi**2 = 1/2``. ``even`` and
    ``odd`` states (only for ``k <= 1/2``) are the reflections through
    ``tau = 0``; each half carries 1/2, so ``R * int psi**2 = 1`` overall.
    """
    n = _check_n(model, n)
    parity = _parity_checked(model.full_line, parity)
    t = np.atleast_1d(_tau_array(tau))
    vals = _reflect(lambda a: _half_line_values(model, n, a), t, parity)
    return vals if np.ndim(tau) else float(vals[0])


def eval_wavefunction(model: OscillatorModel, n: int, tau_grid, parity="half_line") -> GridFunction:
    t = np.atleast_1d(_tau_array(tau_grid))
    return GridFunction.from_points(t, wavefunction(model, n, t, parity), "tau")


def bound_states(model: OscillatorModel, parity="half_line") -> list[BoundState]:
    parity = _parity_checked(model.full_line, parity)
    return [
        BoundState(n, epsilon_n(model, n), energy_n(model, n), norm_constant(model, n), parity)
        for n in range(bound_state_count(model))
    ]


def flat_energy(omega: float, k: float, branch, n: int) -> float:
    """Flat-space singular oscillator level ``omega (2n + 1 +- k)``."""
    sign = as_branch(branch).sign
    if n < 0 or k <= 0:
        raise DomainError("need n >= 0 and k > 0")
    return omega * (2 * n + 1 + sign * k)


def flat_wavefunction_values(omega: float, k: float, branch, n: int, x, parity="half_line"):
    sk = as_branch(branch).sign * k
    if 1 + sk <= 0:
        raise DomainError("1 +- k must be positive")
    parity = _parity_checked(k <= 0.5, parity)
    log_c = 0.5 * (0.5 * math.log(omega) + log_gamma(n + 1 + sk) - log_gamma(n + 1) - 2 * log_gamma(1 + sk))
    root = math.sqrt(omega)

    def half(a):
        with np.errstate(divide="ignore"):
            log_pow = np.where(a > 0, (0.5 + sk) * np.log(root * a), -np.inf) if sk != -0.5 else 0.0
        return np.exp(log_c + log_pow - 0.5 * omega * a**2) * hyp1f1_terminating(n, 1 + sk, omega * a**2)

    xs = np.atleast_1d(np.asarray(x, dtype=float))
    vals = _reflect(half, xs, parity)
    return vals if np.ndim(x) else float(vals[0])


def flat_wavefunction(omega: float, k: float, branch, n: int, x_grid, parity="half_line") -> GridFunction:
    """Flat-space singular oscillator eigenfunction on a uniform ``x`` grid.

    Normalized like its curved counterpart: ``int_0^inf psi**2 dx = 1/2``.
    """
    xs = np.atleast_1d(np.asarray(x_grid, dtype=float))
    return GridFunction.from_points(xs, flat_wavefunction_values(omega, k, branch, n, xs, parity), "x")

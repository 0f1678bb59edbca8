"""Singular Coulomb system on H1 and its mapping onto the singular oscillator.

For ``tau > 0`` the radial equation is of Manning-Rosen type,

    psi'' + [(2 R**2 E - 2 mu R) + 2 mu R coth(tau) - (p**2 - 1/4) / sinh(tau)**2] psi = 0.

The substitution ``exp(tau) = cosh(alpha)``, ``psi = W / sqrt(coth(alpha))``
turns it into the Poschl-Teller equation of :mod:`h1solve.oscillator` with

    eps = 2 R**2 E,   k0**2 = -2 R**2 E + 4 mu R,   k = 2 p.

Levels are labelled by ``n`` and the index ``nu = (1 +- k) / 2``; the
composite ``sigma = mu R / (n + nu)`` depends on ``n`` and therefore lives on
each bound state, not on the model.
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
    "CoulombModel",
    "CoulombBoundState",
    "potential",
    "ambient_potential",
    "reduced_potential",
    "regular_potential",
    "reduced_eigenvalue",
    "energy_from_reduced",
    "duality_tau_of_alpha",
    "duality_alpha_of_tau",
    "map_to_oscillator",
    "sigma_n",
    "bound_state_count",
    "energy_n",
    "norm_constant_general",
    "norm_constant_tau",
    "w_values",
    "w_solution",
    "wavefunction",
    "wavefunction_tau",
    "bound_states",
    "decay_rate",
    "quadrature_cutoff",
    "flat_energy",
    "flat_wavefunction",
    "flat_wavefunction_values",
]


@dataclass(frozen=True)
class CoulombModel:
    """Coupling ``mu``, radius ``R``, singularity strength ``p`` and branch.

    The derived oscillator strength is ``k = 2p``. As for the oscillator, the
    ``minus`` family is admitted only when ``k <= 1/2`` (``p <= 1/4``), which
    keeps ``nu >= 1/4 > 0``.
    """

    mu: float
    radius: float
    p: float
    branch: Branch = Branch.PLUS

    def __post_init__(self) -> None:
        object.__setattr__(self, "branch", as_branch(self.branch))
        for name in ("mu", "radius", "p"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ModelError(f"{name} must be a positive finite number, got {value}")
        if self.branch is Branch.MINUS and self.p > 0.25:
            raise ModelError(f"branch 'minus' requires p <= 1/4, got p={self.p}")

    @property
    def k(self) -> float:
        return 2.0 * self.p

    @property
    def signed_k(self) -> float:
        return self.branch.sign * self.k

    @property
    def nu(self) -> float:
        return 0.5 * (1.0 + self.signed_k)

    @property
    def coupling(self) -> float:
        """The dimensionless product ``mu R`` that fixes the spectrum."""
        return self.mu * self.radius

    @property
    def full_line(self) -> bool:
        return self.p <= 0.5

    def params(self) -> dict:
        return {"mu": self.mu, "radius": self.radius, "p": self.p, "branch": self.branch.value}


@dataclass(frozen=True)
class CoulombBoundState:
    n: int
    nu: float
    sigma: float
    energy: float
    norm_constant: float
    parity: Parity = Parity.HALF_LINE


def _coth_minus_one(a):
    return 2.0 / np.expm1(2.0 * a)


def potential(model: CoulombModel, tau):
    """``V(tau) = -(mu/R)(coth|tau| - 1) + (p**2 - 1/4) / (2 R**2 sinh(tau)**2)``.

    The ``+mu/R`` shift makes ``V -> 0`` as ``|tau| -> inf``.
    """
    t = np.asarray(tau, dtype=float)
    if np.any(t == 0):
        raise DomainError("the Coulomb potential is singular at tau = 0")
    a = np.abs(t)
    R = model.radius
    out = -(model.mu / R) * _coth_minus_one(a)
    c = model.p**2 - 0.25
    if c != 0:
        out = out + c * np.exp(-2.0 * log_sinh(a)) / (2.0 * R**2)
    return out if out.ndim else float(out)


def ambient_potential(model: CoulombModel, s0, s1):
    """Unshifted potential ``-(mu/R) s0/|s1| + (p**2 - 1/4) / (2 s1**2)``."""
    s0 = np.asarray(s0, dtype=float)
    s1 = np.asarray(s1, dtype=float)
    if np.any(s1 == 0):
        raise DomainError("the Coulomb potential is singular at s1 = 0")
    out = -(model.mu / model.radius) * s0 / np.abs(s1) + 0.5 * (model.p**2 - 0.25) / s1**2
    return out if out.ndim else float(out)


def regular_potential(model: CoulombModel, tau):
    """``-2 mu R coth(tau)`` for ``tau > 0``: the reduced potential minus its
    inverse-square part."""
    t = np.asarray(tau, dtype=float)
    out = -2.0 * model.coupling * (1.0 + _coth_minus_one(t))
    return out if out.ndim else float(out)


def reduced_potential(model: CoulombModel, tau):
    """``U`` in ``-psi'' + U psi = lam psi`` with ``lam = 2 R**2 E - 2 mu R``."""
    t = np.asarray(tau, dtype=float)
    out = regular_potential(model, t)
    c = model.p**2 - 0.25
    if c != 0:
        out = out + c * np.exp(-2.0 * log_sinh(t))
    return out if np.ndim(out) else float(out)


def reduced_eigenvalue(model: CoulombModel, energy: float) -> float:
    return 2.0 * model.radius**2 * energy - 2.0 * model.coupling


def energy_from_reduced(model: CoulombModel, lam: float) -> float:
    return (lam + 2.0 * model.coupling) / (2.0 * model.radius**2)


def duality_tau_of_alpha(alpha):
    """``tau = ln cosh(alpha)``, the change of variable ``e**tau = cosh(alpha)``."""
    return log_cosh(alpha) if np.ndim(alpha) else float(log_cosh(alpha))


def duality_alpha_of_tau(tau):
    t = np.asarray(tau, dtype=float)
    if np.any(t < 0):
        raise DomainError("alpha(tau) is defined for tau >= 0")
    # arccosh(e**t) = t + ln(1 + sqrt(1 - e**-2t))
    out = t + np.log1p(np.sqrt(-np.expm1(-2.0 * t)))
    return out if out.ndim else float(out)


def map_to_oscillator(model: CoulombModel, energy: float) -> tuple[float, float, float]:
    """Oscillator parameters ``(eps, k0, k)`` equivalent to a Coulomb energy."""
    R2E = 2.0 * model.radius**2 * energy
    k0_sq = -R2E + 4.0 * model.coupling
    if not k0_sq > 0:
        raise DomainError(f"k0**2 = {k0_sq} is not positive; no real oscillator image")
    return R2E, math.sqrt(k0_sq), model.k


def bound_state_count(model: CoulombModel) -> int:
    """Number of ``n >= 0`` with ``mu R > (n + nu)**2``."""
    nu, g = model.nu, model.coupling
    count = 0
    while g > (count + nu) ** 2:
        count += 1
    return count


def _check_n(model: CoulombModel, n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise IndexError(f"quantum number must be a nonnegative integer, got {n!r}")
    n = int(n)
    count = bound_state_count(model)
    if n >= count:
        raise IndexError(f"n={n} outside bound-state range 0..{count - 1}")
    return n


def sigma_n(model: CoulombModel, n: int) -> float:
    n = _check_n(model, n)
    return model.coupling / (n + model.nu)


def energy_n(model: CoulombModel, n: int) -> float:
    n = _check_n(model, n)
    m = n + model.nu
    R = model.radius
    return -(m * m) / (2.0 * R * R) - model.mu**2 / (2.0 * m * m) + model.mu / R


def decay_rate(model: CoulombModel, n: int) -> float:
    """Rate ``sigma - (n + nu)`` of the exponential tail in ``tau``."""
    n = _check_n(model, n)
    return sigma_n(model, n) - (n + model.nu)


def quadrature_cutoff(model: CoulombModel, n: int) -> float:
    return max(25.0, 40.0 / decay_rate(model, n))


def dual_k0(model: CoulombModel, n: int) -> float:
    """``k0 = sigma + n + nu`` of the oscillator image of level ``n``."""
    n = _check_n(model, n)
    return sigma_n(model, n) + n + model.nu


def log_norm_constant_general(model: CoulombModel, n: int) -> float:
    n = _check_n(model, n)
    k0 = dual_k0(model, n)
    sk = model.signed_k
    top = k0 - 2 * n - sk - 1
    if top <= 0:
        raise InternalError(f"normalization prefactor {top} is not positive")
    try:
        log_sq = (
            math.log(k0)
            + math.log(top)
            + log_gamma(k0 - n)
            + log_gamma(n + 1 + sk)
            - math.log(model.radius)
            - math.log(2 * n + 1 + sk)
            - log_gamma(n + 1)
            - 2.0 * log_gamma(1 + sk)
            - log_gamma(k0 - n - sk)
        )
    except DomainError as exc:
        raise InternalError(str(exc)) from exc
    return 0.5 * log_sq


def norm_constant_general(model: CoulombModel, n: int) -> float:
    """Constant ``A_n`` of the oscillator-form solution ``W(alpha)``.

    Fixed by ``R * int_0^inf W**2 tanh(alpha)**2 dalpha = 1/2``.
    """
    return math.exp(log_norm_constant_general(model, n))


def norm_constant_tau(model: CoulombModel, n: int) -> float:
    """Prefactor of the ``tau``-form wavefunction, ``2**nu * A_n``.

    For ``nu = 1`` this is ``sqrt(2 sigma (sigma**2 - (n+1)**2) / R)``.
    """
    return math.exp(model.nu * math.log(2.0) + log_norm_constant_general(model, n))


def w_values(model: CoulombModel, n: int, alpha) -> np.ndarray:
    n = _check_n(model, n)
    a = np.atleast_1d(np.asarray(alpha, dtype=float))
    if np.any(a < 0):
        raise DomainError("W(alpha) is defined for alpha >= 0")
    k0 = dual_k0(model, n)
    sk = model.signed_k
    log_mag = log_norm_constant_general(model, n) + (2 * n - k0 + 0.5) * log_cosh(a)
    p_sinh = 0.5 + sk
    if p_sinh != 0:
        log_mag = log_mag + p_sinh * log_sinh(a)
    poly = hyp2f1_terminating(n, k0 - n, 1 + sk, np.tanh(a) ** 2)
    vals = np.exp(log_mag) * poly
    return vals if np.ndim(alpha) else float(vals[0])


def w_solution(model: CoulombModel, n: int, alpha_grid) -> GridFunction:
    """Oscillator-form solution ``W(alpha)``; ``psi = W / sqrt(coth(alpha))``."""
    a = np.atleast_1d(np.asarray(alpha_grid, dtype=float))
    return GridFunction.from_points(a, w_values(model, n, a), "alpha")


def _half_line_values(model: CoulombModel, n: int, t: np.ndarray) -> np.ndarray:
    nu = model.nu
    sigma = sigma_n(model, n)
    log_mag = math.log(norm_constant_tau(model, n)) + nu * log_sinh(t) + (n - sigma) * t
    poly = hyp2f1_terminating(n, nu + sigma, 2 * nu, -np.expm1(-2.0 * t))
    return np.exp(log_mag) * poly


def _parity(model: CoulombModel, parity) -> Parity:
    parity = as_parity(parity)
    if parity is not Parity.HALF_LINE and not model.full_line:
        raise DomainError("even/odd states need p <= 1/2; a repulsive core confines motion to tau > 0")
    return parity


def wavefunction(model: CoulombModel, n: int, tau, parity="half_line"):
    """Normalized bound state at arbitrary ``tau``.

    ``half_line``: ``tau >= 0`` with ``R * int_0^inf psi**2 = 1/2``.
    ``even``/``odd``: built from ``|tau|`` (times ``sign(tau)`` when odd), so
    the full-line norm is 1.
    """
    n = _check_n(model, n)
    parity = _parity(model, parity)
    t = np.atleast_1d(np.asarray(tau, dtype=float))
    if parity is Parity.HALF_LINE:
        if np.any(t < 0):
            raise DomainError("half-line states are defined for tau >= 0 only")
        vals = _half_line_values(model, n, t)
    else:
        vals = _half_line_values(model, n, np.abs(t))
        if parity is Parity.ODD:
            vals = np.sign(t) * vals
    return vals if np.ndim(tau) else float(vals[0])


def wavefunction_tau(model: CoulombModel, n: int, tau_grid, parity="half_line") -> GridFunction:
    t = np.atleast_1d(np.asarray(tau_grid, dtype=float))
    return GridFunction.from_points(t, wavefunction(model, n, t, parity), "tau")


def bound_states(model: CoulombModel, parity="half_line") -> list[CoulombBoundState]:
    parity = _parity(model, parity)
    return [
        CoulombBoundState(
            n, model.nu, sigma_n(model, n), energy_n(model, n), norm_constant_tau(model, n), parity
        )
        for n in range(bound_state_count(model))
    ]


def flat_energy(mu: float, nu: float, n: int) -> float:
    """``-mu**2 / (2 (n + nu)**2)``, the one-dimensional hydrogen-like level."""
    if n < 0 or not nu > 0:
        raise DomainError("need n >= 0 and nu > 0")
    return -(mu**2) / (2.0 * (n + nu) ** 2)


def flat_wavefunction_values(mu: float, nu: float, n: int, x, parity="half_line"):
    if n < 0 or not nu > 0:
        raise DomainError("need n >= 0 and nu > 0")
    parity = as_parity(parity)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if parity is Parity.HALF_LINE and np.any(xs < 0):
        raise DomainError("half-line states are defined for x >= 0 only")
    m = n + nu
    log_c = (
        0.5 * math.log(mu)
        - log_gamma(2 * nu)
        - math.log(m)
        + 0.5 * (log_gamma(n + 2 * nu) - math.log(2.0) - log_gamma(n + 1))
    )
    y = 2.0 * mu * np.abs(xs) / m
    with np.errstate(divide="ignore"):
        log_y = np.log(y)
    vals = np.exp(log_c + nu * log_y - 0.5 * y) * hyp1f1_terminating(n, 2 * nu, y)
    if parity is Parity.ODD:
        vals = np.sign(xs) * vals
    return vals if np.ndim(x) else float(vals[0])


def flat_wavefunction(mu: float, nu: float, n: int, x_grid, parity="half_line") -> GridFunction:
    """Flat-space Coulomb eigenfunction with ``y = 2 mu |x| / (n + nu)``.

    Normalized so that ``int_0^inf psi**2 dx = 1/2``, matching the curved
    states under ``x = R tau``.
    """
    xs = np.atleast_1d(np.asarray(x_grid, dtype=float))
    return GridFunction.from_points(xs, flat_wavefunction_values(mu, nu, n, xs, parity), "x")

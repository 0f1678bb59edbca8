"""Independent numerical oracles and the check harness.

Nothing here evaluates a closed-form energy to produce an oracle value: the
eigenvalue oracles discretize the reduced Schrodinger equations directly, and
normalization is checked by adaptive quadrature of the sampled states.

Two eigenvalue discretizations are available:

* :func:`fd_eigenvalues` -- the textbook three-point scheme on a uniform
  ``tau`` grid with Dirichlet walls. Accurate when the state vanishes at
  least linearly at ``tau = 0`` (indicial exponent ``a >= 1``).
* :func:`fd_eigenvalues_singular` -- factors ``psi = sinh(tau)**a * u`` out
  of the inverse-square core and solves for ``u`` by finite volumes in
  ``s = sqrt(tau)``, where all coefficients are smooth. This handles
  attractive cores and both members of a ``+-k`` pair; the exponent ``a`` only
  selects the boundary behaviour, it carries no spectral information.
"""
from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import LinAlgError, eigh_tridiagonal

from . import coulomb, oscillator
from .coulomb import CoulombModel
from .errors import ConvergenceError, DomainError
from .grid import Branch, log_sinh
from .oscillator import OscillatorModel

__all__ = [
    "VerificationReport",
    "FDGrid",
    "integrate",
    "sturm_count",
    "fd_matrix",
    "fd_eigenvalues",
    "fd_eigenvalues_singular",
    "oracle_domain",
    "oracle_steps",
    "oracle_eigenvalues",
    "oracle_bound_count",
    "ode_residual",
    "shape_distance",
    "check_orthonormality",
    "check_residual",
    "check_oracle",
    "check_duality",
    "check_contraction",
    "PRESETS",
    "SUITES",
    "run_suite",
]

TOL_ORTHONORMALITY = 1e-8
TOL_RESIDUAL = 1e-6
TOL_ORACLE = 1e-3
TOL_DUALITY_SPECTRUM = 1e-12
TOL_DUALITY_POINTWISE = 1e-8
TOL_CONTRACTION_RATIO = 0.05
TOL_CONTRACTION_REMAINDER = 1e-6
TOL_CONTRACTION_SCALED_GAP = 1e-2
TOL_SHAPE = 0.02
# an integer mismatch of one state is 1 > 0.5
TOL_COUNT = 0.5

FD_STEP = 1e-3
FD_SINGULAR_STEP = 2e-4
RESIDUAL_STEP = 1e-3
RESIDUAL_RANGE = (0.1, 10.0)

Model = OscillatorModel | CoulombModel


@dataclass(frozen=True)
class VerificationReport:
    check_name: str
    measured: float
    tolerance: float
    passed: bool
    oracle: str
    parameters: dict = field(default_factory=dict)

    @classmethod
    def judge(cls, check_name, measured, tolerance, oracle, parameters) -> "VerificationReport":
        measured = float(measured)
        passed = bool(np.isfinite(measured) and abs(measured) <= tolerance)
        return cls(check_name, measured, float(tolerance), passed, oracle, dict(parameters))

    def sort_key(self) -> tuple[str, str]:
        return self.check_name, json.dumps(self.parameters, sort_keys=True)


@dataclass(frozen=True)
class FDGrid:
    """Uniform nodes ``tau_min, tau_min + h, ..., tau_max``.

    The nodes are the unknowns; the Dirichlet zeros sit one step outside at
    ``tau_min - h`` and ``tau_max + h``. With ``tau_min = h`` the inner wall
    is at ``tau = 0``.
    """

    tau_min: float
    tau_max: float
    h: float

    def __post_init__(self) -> None:
        if not self.h > 0:
            raise DomainError("grid step must be positive")
        if not self.tau_min < self.tau_max:
            raise DomainError("need tau_min < tau_max")
        steps = (self.tau_max - self.tau_min) / self.h
        if abs(steps - round(steps)) > 1e-6 * max(1.0, steps) or round(steps) < 10:
            raise DomainError(f"(tau_max - tau_min)/h = {steps} must be an integer >= 10")

    @property
    def size(self) -> int:
        return int(round((self.tau_max - self.tau_min) / self.h)) + 1

    @property
    def nodes(self) -> np.ndarray:
        return self.tau_min + self.h * np.arange(self.size)

    @classmethod
    def from_wall(cls, h: float, tau_max: float) -> "FDGrid":
        """Grid whose inner Dirichlet wall is at ``tau = 0``."""
        steps = max(10, int(math.ceil(tau_max / h - 1e-9)))
        return cls(h, steps * h, h)


# --------------------------------------------------------------------------
# quadrature

_GL_ORDER = 15
_GL_X, _GL_W = leggauss(_GL_ORDER)


def _panel(f, a: float, b: float) -> float:
    half = 0.5 * (b - a)
    vals = np.asarray(f(0.5 * (a + b) + half * _GL_X), dtype=float)
    return half * float(np.dot(_GL_W, vals))


def integrate(f: Callable, a: float, b: float, abs_tol: float = 1e-10, max_depth: int = 50) -> float:
    """Globally adaptive Gauss-Legendre quadrature of a vectorized ``f``.

    Every panel carries the difference between its one-panel estimate and the
    sum over its halves as an error bound. The panel with the largest bound is
    bisected until the bounds add up to at most ``abs_tol``.

    Raises:
        ConvergenceError: a panel needing refinement is already ``max_depth``
            bisections deep, or the integrand is not finite.
    """
    if not a < b:
        raise DomainError("need a < b")

    def entry(lo, hi, whole, depth):
        mid = 0.5 * (lo + hi)
        left, right = _panel(f, lo, mid), _panel(f, mid, hi)
        if not np.isfinite(left + right):
            raise ConvergenceError(f"non-finite integrand on [{lo}, {hi}]")
        err = abs(left + right - whole)
        return (-err, lo, hi, left, right, depth)

    heap = [entry(a, b, _panel(f, a, b), 0)]
    total_err = -heap[0][0]
    while total_err > abs_tol:
        neg_err, lo, hi, left, right, depth = heapq.heappop(heap)
        if depth >= max_depth:
            raise ConvergenceError(f"subdivision depth {max_depth} exceeded near [{lo}, {hi}]")
        mid = 0.5 * (lo + hi)
        children = (entry(lo, mid, left, depth + 1), entry(mid, hi, right, depth + 1))
        for child in children:
            heapq.heappush(heap, child)
        total_err = math.fsum(-item[0] for item in heap)
    return math.fsum(item[3] + item[4] for item in heap)


# --------------------------------------------------------------------------
# eigenvalue oracles

def sturm_count(diag: np.ndarray, off: np.ndarray, x: float) -> int:
    """Number of eigenvalues below ``x`` of the symmetric tridiagonal matrix.

    Counts negative pivots of the ``LDL^T`` factorization of ``T - x I``.
    """
    count = 0
    d = 1.0
    tiny = np.finfo(float).tiny
    off2 = np.square(off).tolist()
    for i, a in enumerate(diag.tolist()):
        d = a - x - (off2[i - 1] / d if i else 0.0)
        if d == 0.0:
            d = -tiny
        if d < 0:
            count += 1
    return count


def _lowest(diag: np.ndarray, off: np.ndarray, m: int) -> np.ndarray:
    if m < 1:
        raise DomainError("need m >= 1 eigenvalues")
    m = min(m, len(diag))
    try:
        # stebz: Sturm-sequence bisection; absolute tolerance must not scale
        # with the (huge) matrix norm of the near-wall rows
        vals = eigh_tridiagonal(
            diag, off, eigvals_only=True, select="i", select_range=(0, m - 1),
            lapack_driver="stebz", tol=1e-13,
        )
    except LinAlgError as exc:
        raise ConvergenceError(f"tridiagonal bisection failed: {exc}") from exc
    return np.asarray(vals, dtype=float)


def fd_matrix(u: Callable, grid: FDGrid) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of ``-d2/dtau2 + U`` on ``grid``."""
    h2 = grid.h**2
    diag = 2.0 / h2 + np.asarray(u(grid.nodes), dtype=float)
    if not np.all(np.isfinite(diag)):
        raise DomainError("potential is not finite on the grid")
    off = np.full(grid.size - 1, -1.0 / h2)
    return diag, off


def fd_eigenvalues(u: Callable, grid: FDGrid, m: int) -> np.ndarray:
    """The ``m`` lowest eigenvalues of ``-psi'' + U psi = lam psi``.

    Three-point second difference with Dirichlet ends. Beyond the bound
    states the values approximate the box-quantized continuum.
    """
    diag, off = fd_matrix(u, grid)
    return _lowest(diag, off, m)


_CELL_X, _CELL_W = leggauss(4)


def singular_matrix(v_regular: Callable, exponent: float, s_step: float, tau_max: float):
    """Symmetrized finite-volume matrix for the factored problem.

    Solves ``-psi'' + [v_regular + a(a-1)/sinh(tau)**2] psi = lam psi`` on the
    branch ``psi ~ sinh(tau)**a``. Writing ``psi = sinh**a u`` gives
    ``-(w u')'/w + (v_regular - a**2) u = lam u`` with ``w = sinh**(2a)``.
    In ``s = sqrt(tau)`` this is a regular Sturm-Liouville problem with zero
    flux at ``s = 0`` and ``u = 0`` beyond ``tau_max``.
    """
    a = float(exponent)
    if not a >= 0:
        raise DomainError("indicial exponent must be >= 0")
    s_max = math.sqrt(tau_max)
    cells = max(10, int(math.ceil(s_max / s_step)))
    ds = s_max / cells
    faces = ds * np.arange(cells + 1)
    s = 0.5 * (faces[:-1] + faces[1:])[:, None] + 0.5 * ds * _CELL_X
    tau = s * s
    # weights relative to sinh**(2a) cancel in the symmetrized matrix; the
    # common factor keeps them finite for long domains
    shift = 2.0 * a * log_sinh(tau_max)
    w = np.exp(2.0 * a * log_sinh(tau) - shift) if a else np.ones_like(tau)
    jac = 2.0 * s * 0.5 * ds
    mass = (w * jac) @ _CELL_W
    pot = (w * (np.asarray(v_regular(tau), dtype=float) - a * a) * jac) @ _CELL_W
    sf = faces[1:]
    wf = np.exp(2.0 * a * log_sinh(sf * sf) - shift) if a else np.ones_like(sf)
    cond = wf / (2.0 * sf * ds)
    cond_left = np.concatenate([[0.0], cond[:-1]])
    diag = (cond_left + cond + pot) / mass
    off = -cond[:-1] / np.sqrt(mass[:-1] * mass[1:])
    if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
        raise DomainError("singular finite-volume matrix is not finite")
    return diag, off


def fd_eigenvalues_singular(
    v_regular: Callable, exponent: float, m: int, tau_max: float = 25.0, s_step: float = FD_SINGULAR_STEP
) -> np.ndarray:
    """Lowest ``m`` eigenvalues for an inverse-square core on a chosen branch."""
    diag, off = singular_matrix(v_regular, exponent, s_step, tau_max)
    return _lowest(diag, off, m)


def ode_residual(state: Callable, epsilon: float, u: Callable, grid: FDGrid) -> float:
    """``max |psi'' + (eps - U) psi| / max |psi|`` on ``grid.nodes``.

    ``psi''`` is the five-point central difference with step ``grid.h``; the
    stencil reaches ``2h`` beyond the grid ends.
    """
    h = grid.h
    t = grid.nodes
    psi = np.asarray(state(t), dtype=float)
    scale = np.max(np.abs(psi))
    if not scale > 0:
        raise DomainError("state vanishes on the grid; residual is undefined")
    m2, m1 = state(t - 2 * h), state(t - h)
    p1, p2 = state(t + h), state(t + 2 * h)
    d2 = (-m2 + 16.0 * m1 - 30.0 * psi + 16.0 * p1 - p2) / (12.0 * h * h)
    res = d2 + (epsilon - np.asarray(u(t), dtype=float)) * psi
    return float(np.max(np.abs(res)) / scale)


def shape_distance(f: np.ndarray, g: np.ndarray, x: np.ndarray) -> float:
    """L2 distance between ``f`` and ``g`` after scaling each to unit norm.

    The overall sign of ``g`` is aligned with ``f`` first, so only the shape
    is compared.
    """
    nf = math.sqrt(np.trapezoid(f * f, x))
    ng = math.sqrt(np.trapezoid(g * g, x))
    if not (nf > 0 and ng > 0):
        raise DomainError("cannot compare shapes of a vanishing function")
    fh, gh = f / nf, g / ng
    if np.trapezoid(fh * gh, x) < 0:
        gh = -gh
    return math.sqrt(max(np.trapezoid((fh - gh) ** 2, x), 0.0))


# --------------------------------------------------------------------------
# uniform view of the two systems

def _system(model: Model) -> str:
    return "oscillator" if isinstance(model, OscillatorModel) else "coulomb"


def _params(model: Model, **extra) -> dict:
    out = {"system": _system(model), **model.params()}
    out.update(extra)
    return out


def _count(model: Model) -> int:
    if isinstance(model, OscillatorModel):
        return oscillator.bound_state_count(model)
    return coulomb.bound_state_count(model)


def _state(model: Model, n: int) -> Callable:
    mod = oscillator if isinstance(model, OscillatorModel) else coulomb
    return lambda t: mod.wavefunction(model, n, np.asarray(t, dtype=float))


def _cutoff(model: Model, n: int) -> float:
    mod = oscillator if isinstance(model, OscillatorModel) else coulomb
    return mod.quadrature_cutoff(model, n)


def _reduced_target(model: Model, n: int) -> float:
    """Eigenvalue of the reduced equation that level ``n`` should produce."""
    if isinstance(model, OscillatorModel):
        return oscillator.epsilon_n(model, n)
    return coulomb.reduced_eigenvalue(model, coulomb.energy_n(model, n))


def _reduced_u(model: Model) -> Callable:
    mod = oscillator if isinstance(model, OscillatorModel) else coulomb
    return lambda t: mod.reduced_potential(model, t)


def _regular_u(model: Model) -> Callable:
    mod = oscillator if isinstance(model, OscillatorModel) else coulomb
    return lambda t: mod.regular_potential(model, t)


def _exponent(model: Model) -> float:
    """Indicial exponent ``a`` with ``psi ~ tau**a`` at the origin."""
    if isinstance(model, OscillatorModel):
        return 0.5 + model.signed_k
    return model.nu


def _threshold(model: Model) -> float:
    """Bottom of the continuum of the reduced equation."""
    if isinstance(model, OscillatorModel):
        return 0.0
    return -2.0 * model.coupling


def _decay_rates(model: Model) -> list[float]:
    mod = oscillator if isinstance(model, OscillatorModel) else coulomb
    return [mod.decay_rate(model, n) for n in range(_count(model))]


def oracle_domain(model: Model) -> float:
    """Truncation point where every bound tail is below 1e-12 of its scale."""
    return max(25.0, 28.0 / min(_decay_rates(model), default=1.0))


def oracle_steps(model: Model) -> tuple[float, float]:
    """Steps ``(h, ds)`` for the plain and the factored discretization.

    The defaults hold while the fastest decay rate ``r`` is moderate. Beyond
    that the plain step keeps ``h r <= 0.03`` (relative error about
    ``(h r)**2 / 12``) and the ``sqrt(tau)`` step shrinks like ``1/sqrt(r)``.
    """
    fastest = max(_decay_rates(model), default=1.0)
    h = min(FD_STEP, 0.03 / fastest)
    ds = min(FD_SINGULAR_STEP, FD_SINGULAR_STEP * math.sqrt(25.0 / fastest))
    return h, ds


def oracle_eigenvalues(model: Model, m: int) -> tuple[np.ndarray, str]:
    """Lowest ``m`` reduced eigenvalues from the appropriate discretization."""
    a = _exponent(model)
    tau_max = oracle_domain(model)
    h, ds = oracle_steps(model)
    if a >= 1.0:
        grid = FDGrid.from_wall(h, tau_max)
        return fd_eigenvalues(_reduced_u(model), grid, m), (
            f"3-point FD, Dirichlet, h={h:g}, tau in [h, {grid.tau_max:g}], Sturm bisection"
        )
    vals = fd_eigenvalues_singular(_regular_u(model), a, m, tau_max=tau_max, s_step=ds)
    return vals, (
        f"factored finite volume in sqrt(tau), a={a:g}, ds={ds:g}, "
        f"tau_max={tau_max:g}, Sturm bisection"
    )


def oracle_bound_count(model: Model) -> int:
    a = _exponent(model)
    tau_max = oracle_domain(model)
    h, ds = oracle_steps(model)
    if a >= 1.0:
        diag, off = fd_matrix(_reduced_u(model), FDGrid.from_wall(h, tau_max))
    else:
        diag, off = singular_matrix(_regular_u(model), a, ds, tau_max)
    return sturm_count(diag, off, _threshold(model))


# --------------------------------------------------------------------------
# checks

def check_orthonormality(model: Model, tol_scale: float = 1.0) -> list[VerificationReport]:
    """``R int_0^inf psi_n psi_m dtau = delta_nm / 2`` for all bound pairs."""
    reports = []
    count = _count(model)
    R = model.radius
    for n in range(count):
        for m in range(n, count):
            fn, fm = _state(model, n), _state(model, m)
            upper = max(_cutoff(model, n), _cutoff(model, m))
            value = R * integrate(lambda t: fn(t) * fm(t), 0.0, upper, abs_tol=1e-11)
            target = 0.5 if n == m else 0.0
            reports.append(
                VerificationReport.judge(
                    "orthonormality",
                    abs(value - target),
                    TOL_ORTHONORMALITY * tol_scale,
                    f"adaptive Gauss-Legendre on [0, {upper:g}]",
                    _params(model, n=n, n_prime=m),
                )
            )
    return reports


def residual_grid(model: Model, n: int) -> FDGrid:
    """Residual grid on ``RESIDUAL_RANGE``.

    The step follows the fastest local scale of the state, the larger of the
    tail decay rate and the peak wavenumber ``sqrt(eps - U)`` on the range, so
    the stencil's own truncation error, roughly ``(h k)**4 * k**2 / 90``,
    stays far below the residual tolerance. It never drops under 1e-4, where
    round-off takes over.
    """
    mod = oscillator if isinstance(model, OscillatorModel) else coulomb
    lo, hi = RESIDUAL_RANGE
    probe = np.linspace(lo, hi, 2001)
    kinetic = float(np.max(_reduced_target(model, n) - _reduced_u(model)(probe)))
    scale = max(mod.decay_rate(model, n), math.sqrt(max(kinetic, 0.0)))
    target = min(RESIDUAL_STEP, max(1e-4, 0.01 / scale))
    steps = int(math.ceil((hi - lo) / target))
    return FDGrid(lo, hi, (hi - lo) / steps)


def check_residual(model: Model, tol_scale: float = 1.0) -> list[VerificationReport]:
    reports = []
    for n in range(_count(model)):
        grid = residual_grid(model, n)
        res = ode_residual(_state(model, n), _reduced_target(model, n), _reduced_u(model), grid)
        reports.append(
            VerificationReport.judge(
                "residual",
                res,
                TOL_RESIDUAL * tol_scale,
                f"5-point second difference, h={grid.h:.6g}, tau in {list(RESIDUAL_RANGE)}",
                _params(model, n=n),
            )
        )
    return reports


def check_oracle(model: Model, tol_scale: float = 1.0) -> list[VerificationReport]:
    """Compare closed-form levels with discretized eigenvalues.

    Oscillator levels are compared as ``eps``; Coulomb levels as the physical
    energy ``E`` recovered from the reduced eigenvalue.
    """
    count = _count(model)
    reports = [
        VerificationReport.judge(
            "oracle.count",
            oracle_bound_count(model) - count,
            TOL_COUNT,  # integer comparison, never scaled
            "Sturm count of discretized eigenvalues below the continuum threshold",
            _params(model),
        )
    ]
    if count == 0:
        return reports
    values, description = oracle_eigenvalues(model, count)
    for n in range(count):
        if isinstance(model, OscillatorModel):
            exact, approx = oscillator.epsilon_n(model, n), values[n]
        else:
            exact = coulomb.energy_n(model, n)
            approx = coulomb.energy_from_reduced(model, values[n])
        reports.append(
            VerificationReport.judge(
                "oracle.eigenvalue",
                abs(approx / exact - 1.0),
                TOL_ORACLE * tol_scale,
                description,
                _params(model, n=n),
            )
        )
    return reports


def _parse_defect(defect) -> dict:
    if not defect:
        return {}
    if isinstance(defect, dict):
        return {str(k): float(v) for k, v in defect.items()}
    key, _, value = str(defect).partition(":")
    if key not in ("epsilon", "k0") or not value:
        raise DomainError(f"defect must look like 'epsilon:1e-6' or 'k0:1e-6', got {defect!r}")
    return {key: float(value)}


def check_duality(model: CoulombModel, n: int, defect=None, tol_scale: float = 1.0) -> list[VerificationReport]:
    """Spectrum and wavefunction sides of the Coulomb-to-oscillator map.

    ``defect`` (``{"epsilon": d}`` / ``{"k0": d}`` or ``"epsilon:1e-6"``) shifts
    the mapped parameters before the spectrum test; used as a negative control.
    """
    shifts = _parse_defect(defect)
    energy = coulomb.energy_n(model, n)
    eps, k0, _ = coulomb.map_to_oscillator(model, energy)
    eps += shifts.get("epsilon", 0.0)
    k0 += shifts.get("k0", 0.0)
    level = 2 * n + 1 + model.signed_k
    spectrum_dev = abs(math.sqrt(-eps) - (k0 - level)) if eps < 0 else math.inf
    params = _params(model, n=n)
    if shifts:
        params["defect"] = shifts
    reports = [
        VerificationReport.judge(
            "duality.spectrum",
            spectrum_dev,
            TOL_DUALITY_SPECTRUM * tol_scale,
            "sqrt(-eps) vs k0 - (2n+1+-k) after mapping E_n to oscillator parameters",
            params,
        )
    ]
    alpha = np.linspace(0.2, 5.0, 241)
    psi = coulomb.wavefunction(model, n, coulomb.duality_tau_of_alpha(alpha))
    w = coulomb.w_values(model, n, alpha) * np.sqrt(np.tanh(alpha))
    keep = np.abs(w) > 1e-4 * np.max(np.abs(w))
    ratio = psi[keep] / w[keep]
    if np.all(ratio > 0) or np.all(ratio < 0):
        spread = float(np.max(np.abs(ratio)) / np.min(np.abs(ratio)) - 1.0)
    else:
        spread = math.inf
    reports.append(
        VerificationReport.judge(
            "duality.pointwise",
            spread,
            TOL_DUALITY_POINTWISE * tol_scale,
            "max/min of psi(ln cosh a) / (W(a) sqrt(tanh a)) over a in [0.2, 5]",
            params,
        )
    )
    return reports


def _contraction_models(system: str, params: dict, radii: Sequence[float], n: int) -> list[Model]:
    models = []
    for R in radii:
        if system == "oscillator":
            model = OscillatorModel(params["omega"], R, params["k"], params.get("branch", "plus"))
        elif system == "coulomb":
            model = CoulombModel(params["mu"], R, params["p"], params.get("branch", "plus"))
        else:
            raise DomainError(f"unknown system {system!r}")
        if _count(model) <= n:
            raise DomainError(f"radius {R} supports fewer than {n + 1} bound states")
        models.append(model)
    return models


def check_contraction(
    system: str, params: dict, n: int, radii: Sequence[float], tol_scale: float = 1.0
) -> list[VerificationReport]:
    """Flat-space limit ``R -> inf`` with ``x = R tau`` fixed.

    Energies: the curved level minus the flat one must equal its exact
    remainder at every radius. For the oscillator ``R**2 * gap`` must settle
    to a constant; for Coulomb the gap is dominated by ``mu/R`` so successive
    gaps scale with the radius ratio. Shapes: the curved state at the largest
    radius, sampled at ``tau = x/R``, is compared with the flat eigenfunction.
    """
    radii = [float(r) for r in radii]
    if len(radii) < 2 or any(b <= a for a, b in zip(radii, radii[1:])):
        raise DomainError("radii must be an increasing sequence of at least two values")
    models = _contraction_models(system, params, radii, n)
    base = {"system": system, **{k: v for k, v in params.items()}, "n": n, "radii": radii}
    base["branch"] = models[0].branch.value
    reports = []

    if system == "oscillator":
        omega = params["omega"]
        e_flat = oscillator.flat_energy(omega, params["k"], base["branch"], n)
        gaps, remainders = [], []
        for m, R in zip(models, radii):
            a = 2 * n + 1 + m.signed_k
            # k0 - omega R**2, written without cancellation
            k0_excess = 0.25 / (m.k0 + omega * R * R)
            gaps.append(oscillator.energy_n(m, n) - e_flat)
            remainders.append((-(a * a + 0.25) / 2 + a * k0_excess) / (R * R))
        rem_err = max(abs(g - r) / abs(r) for g, r in zip(gaps, remainders))
        scaled = [abs(g) * R * R for g, R in zip(gaps, radii)]
        spread = max(scaled) / min(scaled) - 1.0
        reports.append(VerificationReport.judge(
            "contraction.remainder", rem_err, TOL_CONTRACTION_REMAINDER * tol_scale,
            "E_n(R) - omega(2n+1+-k) vs exact algebraic remainder", base))
        reports.append(VerificationReport.judge(
            "contraction.scaled_gap", spread, TOL_CONTRACTION_SCALED_GAP * tol_scale,
            "relative spread of R^2 |E_n(R) - E_flat| across radii", base))
        top = models[-1]
        x_max = math.sqrt((80.0 + 8.0 * n) / omega)
        x = np.linspace(0.0, x_max, 4001)
        curved = oscillator.wavefunction(top, n, x / top.radius)
        flat = oscillator.flat_wavefunction_values(omega, params["k"], base["branch"], n, x)
    else:
        mu = params["mu"]
        nu = models[0].nu
        e_flat = coulomb.flat_energy(mu, nu, n)
        gaps = [coulomb.energy_n(m, n) - e_flat for m in models]
        rem_err = max(
            abs(g - (mu / R - (n + nu) ** 2 / (2 * R * R))) / abs(g) for g, R in zip(gaps, radii)
        )
        ratio_err = max(
            abs((g0 / g1) / (R1 / R0) - 1.0)
            for g0, g1, R0, R1 in zip(gaps, gaps[1:], radii, radii[1:])
        )
        reports.append(VerificationReport.judge(
            "contraction.remainder", rem_err, TOL_CONTRACTION_REMAINDER * tol_scale,
            "E_n(R) - E_flat vs mu/R - (n+nu)^2/(2R^2)", base))
        reports.append(VerificationReport.judge(
            "contraction.energy_ratio", ratio_err, TOL_CONTRACTION_RATIO * tol_scale,
            "gap(R_i)/gap(R_i+1) relative to R_i+1/R_i", base))
        top = models[-1]
        x_max = 40.0 * (n + nu) / mu + 4.0 * n / mu
        x = np.linspace(0.0, x_max, 4001)
        curved = coulomb.wavefunction(top, n, x / top.radius)
        flat = coulomb.flat_wavefunction_values(mu, nu, n, x)
    reports.append(VerificationReport.judge(
        "contraction.shape", shape_distance(curved, flat, x), TOL_SHAPE * tol_scale,
        f"normalized L2 distance at R={radii[-1]:g} on x in [0, {x[-1]:g}]", base))
    return reports


# --------------------------------------------------------------------------
# suites

PRESETS: dict[str, dict] = {
    "paper-demo": {
        "models": [
            OscillatorModel(math.sqrt(30.0), 1.0, 1.0, Branch.PLUS),
            CoulombModel(6.0, 1.0, 0.5, Branch.PLUS),
            CoulombModel(6.0, 1.0, 0.25, Branch.PLUS),
            CoulombModel(6.0, 1.0, 0.25, Branch.MINUS),
        ],
        "contraction": [
            ("coulomb", {"mu": 1.0, "p": 0.5, "branch": "plus"}, 0, (1e2, 1e3)),
            ("oscillator", {"omega": 1.0, "k": 1.0, "branch": "plus"}, 0, (1e2, 1e3, 1e4)),
        ],
    },
}

SUITES = ("all", "orthonormality", "residual", "oracle", "duality", "contraction")


def run_suite(
    suite: str = "all",
    models: Iterable[Model] | None = None,
    contraction: Iterable[tuple] | None = None,
    preset: str | None = None,
    tol_scale: float = 1.0,
    defect=None,
) -> list[VerificationReport]:
    """Run one suite (or ``all``) and return reports in deterministic order."""
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if not tol_scale > 0:
        raise DomainError("tolerance scale must be positive")
    if preset is not None:
        if preset not in PRESETS:
            raise DomainError(f"unknown preset {preset!r}")
        models = PRESETS[preset]["models"] if models is None else models
        contraction = PRESETS[preset]["contraction"] if contraction is None else contraction
    models = list(models or [])
    contraction = list(contraction or [])
    want = (lambda name: suite in ("all", name))
    reports: list[VerificationReport] = []
    for model in models:
        if want("orthonormality"):
            reports += check_orthonormality(model, tol_scale)
        if want("residual"):
            reports += check_residual(model, tol_scale)
        if want("oracle"):
            reports += check_oracle(model, tol_scale)
        if want("duality") and isinstance(model, CoulombModel):
            for n in range(coulomb.bound_state_count(model)):
                reports += check_duality(model, n, defect=defect, tol_scale=tol_scale)
    if want("contraction"):
        for system, params, n, radii in contraction:
            reports += check_contraction(system, params, n, radii, tol_scale)
    return sorted(reports, key=VerificationReport.sort_key)

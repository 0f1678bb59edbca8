"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line. Run the file directly
(``python tests/test_acceptance.py``) for the nine lines without pytest.
"""
import math
import shutil
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from h1solve import coulomb as cb
from h1solve import oscillator as osc
from h1solve import special
from h1solve import verify as vf
from h1solve.coulomb import CoulombModel
from h1solve.oscillator import OscillatorModel

OSC = OscillatorModel(math.sqrt(30.0), 1.0, 1.0, "plus")  # k0 = 5.5
COUL = CoulombModel(6.0, 1.0, 0.5, "plus")  # nu = 1


def _outcome(number, title, measured, tol, seconds, limit=None, ok=None):
    good = (measured <= tol) if ok is None else ok
    if limit is not None:
        good = good and seconds < limit
    budget = f", limit {limit:g} s" if limit is not None else ""
    line = (
        f"ACCEPTANCE {number} {'PASS' if good else 'FAIL'}  {title}: "
        f"measured {measured:.3e} (tol {tol:g}), {seconds:.2f} s{budget}"
    )
    return good, line


def criterion_1():
    t0 = time.perf_counter()
    h = 1e-3
    grid = vf.FDGrid(h, 25.0, h)
    diag, off = vf.fd_matrix(lambda t: osc.reduced_potential(OSC, t), grid)
    negative = vf.sturm_count(diag, off, 0.0)
    lam = vf.fd_eigenvalues(lambda t: osc.reduced_potential(OSC, t), grid, 2)
    exact = np.array([-(2 - 5.5) ** 2, -(4 - 5.5) ** 2])  # -12.25, -2.25
    err = float(np.max(np.abs(lam / exact - 1)))
    return _outcome(1, "oscillator FD oracle (2 negative levels)", err, 1e-3, time.perf_counter() - t0, 30,
                    ok=negative == 2 and err <= 1e-3)


def criterion_2():
    t0 = time.perf_counter()
    grid = vf.FDGrid.from_wall(1e-3, 25.0)
    u = lambda t: cb.reduced_potential(COUL, t)  # noqa: E731
    diag, off = vf.fd_matrix(u, grid)
    threshold = -2.0 * COUL.coupling
    count = vf.sturm_count(diag, off, threshold)
    lam = vf.fd_eigenvalues(u, grid, 2)
    energies = np.array([cb.energy_from_reduced(COUL, x) for x in lam])
    exact = np.array([-0.5 - 18 + 6, -2 - 4.5 + 6])  # -12.5, -0.5
    err = float(np.max(np.abs(energies / exact - 1)))
    return _outcome(2, "Coulomb FD oracle (E = -12.5, -0.5)", err, 1e-3, time.perf_counter() - t0, 30,
                    ok=count == 2 and err <= 1e-3)


def criterion_3():
    t0 = time.perf_counter()
    reports = vf.check_orthonormality(OSC) + vf.check_orthonormality(COUL)
    worst = max(r.measured for r in reports)
    pairs_ok = len(reports) == 3 + 3
    return _outcome(3, "orthonormality, all bound pairs", worst, 1e-8, time.perf_counter() - t0, 10,
                    ok=pairs_ok and worst <= 1e-8)


def criterion_4():
    t0 = time.perf_counter()
    spectrum, pointwise = [], []
    for n in range(cb.bound_state_count(COUL)):
        spec_report, point_report = vf.check_duality(COUL, n)
        spectrum.append(spec_report.measured)
        pointwise.append(point_report.measured)
    ok = max(spectrum) <= 1e-12 and max(pointwise) <= 1e-8
    good, line = _outcome(4, "duality, pointwise ratio spread", max(pointwise), 1e-8, time.perf_counter() - t0, ok=ok)
    return good, line + f"; spectrum {max(spectrum):.1e} (tol 1e-12)"


def criterion_5():
    t0 = time.perf_counter()
    reports = []
    for model in vf.PRESETS["paper-demo"]["models"]:
        reports += vf.check_residual(model)
    worst = max(r.measured for r in reports)
    return _outcome(5, f"ODE residual, {len(reports)} states", worst, 1e-6, time.perf_counter() - t0)


def criterion_6():
    t0 = time.perf_counter()
    mu, n = 1.0, 0
    e_flat = cb.flat_energy(mu, 1.0, n)
    gaps = [abs(cb.energy_n(CoulombModel(mu, R, 0.5), n) - e_flat) for R in (1e2, 1e3)]
    ratio_err = abs(gaps[0] / gaps[1] / 10.0 - 1.0)
    big = CoulombModel(mu, 1e3, 0.5)
    x = np.linspace(0.0, 40.0, 4001)
    shape = vf.shape_distance(cb.wavefunction(big, n, x / big.radius), cb.flat_wavefunction_values(mu, 1.0, n, x), x)
    good, line = _outcome(6, "contraction, gap ratio vs 10", ratio_err, 0.05, time.perf_counter() - t0,
                          ok=ratio_err <= 0.05 and shape <= 0.02)
    return good, line + f"; shape L2 {shape:.1e} (tol 0.02)"


def criterion_7():
    t0 = time.perf_counter()
    worst = 0.0
    ok = True
    for branch in ("minus", "plus"):  # nu = 1/4, 3/4
        m = CoulombModel(6.0, 1.0, 0.25, branch)
        a = m.nu
        ok &= math.isclose(a * (a - 1), m.p**2 - 0.25) and math.isclose(a * (a - 1), -3 / 16)
        lam = vf.fd_eigenvalues_singular(lambda t: cb.regular_potential(m, t), a, 2, tau_max=vf.oracle_domain(m))
        for n in range(2):
            # -(n+nu)^2/2R^2 - mu^2/2(n+nu)^2 + mu/R at mu = 6, R = 1
            exact = -((n + a) ** 2) / 2 - 36 / (2 * (n + a) ** 2) + 6
            assert math.isclose(cb.energy_n(m, n), exact, rel_tol=1e-13)
            worst = max(worst, abs(cb.energy_from_reduced(m, lam[n]) / exact - 1))
    return _outcome(7, "anyon spectra nu = 1/4, 3/4 vs FD oracle", worst, 1e-3, time.perf_counter() - t0,
                    ok=ok and worst <= 1e-3)


def _laguerre(n, alpha, x):
    alpha, x = Fraction(alpha), Fraction(x)
    prev, cur = Fraction(1), 1 + alpha - x
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def criterion_8():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    worst = {}
    # Pochhammer recurrence, m <= 30
    dev = 0.0
    for a in rng.uniform(-5, 5, 40):
        for m in range(31):
            lhs, rhs = special.pochhammer(a, m + 1), special.pochhammer(a, m) * (a + m)
            dev = max(dev, abs(lhs - rhs) / max(abs(rhs), 1e-300))
    worst["pochhammer"] = (dev, 4 * np.finfo(float).eps)
    # 2F1(-n, b; b; x) = (1 - x)^n, n <= 10, |x| <= 0.9
    dev = 0.0
    for _ in range(400):
        n, b, x = int(rng.integers(0, 11)), rng.uniform(-20, 20), rng.uniform(-0.9, 0.9)
        ref = (1 - x) ** n
        dev = max(dev, abs(special.hyp2f1_terminating(n, b, b, x) / ref - 1))
    worst["(1-x)^n"] = (dev, 1e-12)
    # Kummer-Laguerre, n <= 15, exact-rational recurrence as the reference
    dev = 0.0
    for _ in range(300):
        n, c, x = int(rng.integers(0, 16)), rng.uniform(0.25, 6), rng.uniform(0, 20)
        ours = special.pochhammer(c, n) / math.factorial(n) * special.hyp1f1_terminating(n, c, x)
        ref = float(_laguerre(n, Fraction(c) - 1, x))
        dev = max(dev, abs(ours / ref - 1))
    worst["laguerre"] = (dev, 1e-11)
    # log-gamma recurrence
    dev = max(abs(special.log_gamma(x + 1) - special.log_gamma(x) - math.log(x)) for x in (0.1, 0.5, 1.5, 10, 100))
    worst["log_gamma"] = (dev, 1e-12)
    ok = all(d <= t for d, t in worst.values())
    ratio = max(d / t for d, t in worst.values())
    good, line = _outcome(8, "special-function invariants (worst measured/tol)", ratio, 1.0,
                          time.perf_counter() - t0, 5, ok=ok)
    return good, line + "; " + ", ".join(f"{k} {d:.1e}" for k, (d, _) in worst.items())


def criterion_9():
    t0 = time.perf_counter()
    exe = shutil.which("h1solve")
    cmd = ([exe] if exe else [sys.executable, "-m", "h1solve"]) + ["verify", "all", "--preset", "paper-demo"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    identical = runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0
    codes = [r.returncode for r in runs]
    good, line = _outcome(9, "determinism of verify all --preset paper-demo", 0.0 if identical else 1.0, 0.0,
                          time.perf_counter() - t0, ok=identical and codes == [0, 0])
    return good, line + f"; exit codes {codes}, {len(runs[0].stdout)} bytes"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8,
            criterion_9]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_acceptance(criterion, capsys):
    good, line = criterion()
    with capsys.disabled():
        print("\n" + line)
    assert good, line


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(g for g, _ in results) else 1)

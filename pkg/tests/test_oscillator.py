import math

import mpmath as mp
import numpy as np
import pytest

from h1solve import oscillator as osc
from h1solve.errors import DomainError, ModelError
from h1solve.grid import GridFunction
from h1solve.oscillator import OscillatorModel
from h1solve.verify import integrate

DEMO = OscillatorModel(math.sqrt(30.0), 1.0, 1.0, "plus")


def _unnormalized(model, n, t):
    """Closed-form shape with mpmath's own 2F1, no normalization."""
    sk, k0 = model.signed_k, mp.sqrt(mp.mpf(model.omega) ** 2 * model.radius**4 + mp.mpf(1) / 4)
    t = mp.mpf(t)
    return (
        mp.sinh(t) ** (mp.mpf(1) / 2 + sk)
        * mp.cosh(t) ** (2 * n - k0 + mp.mpf(1) / 2)
        * mp.hyp2f1(-n, k0 - n, 1 + sk, mp.tanh(t) ** 2)
    )


def _quadrature_norm(model, n):
    mp.mp.dps = 30
    total = model.radius * mp.quad(lambda t: _unnormalized(model, n, t) ** 2, [0, 1, 5, 20, mp.inf])
    return float(mp.sqrt(mp.mpf(1) / 2 / total))


@pytest.mark.parametrize("omega, expected", [(math.sqrt(2.0), 1.5), (math.sqrt(30.0), 5.5), (1e-9, 0.5)])
def test_k0(omega, expected):
    assert osc.k0_of(OscillatorModel(omega, 1.0, 1.0)) == pytest.approx(expected, rel=1e-15)


def test_demo_spectrum():
    assert osc.bound_state_count(DEMO) == 2
    assert osc.epsilon_n(DEMO, 0) == pytest.approx(-12.25, rel=1e-14)
    assert osc.epsilon_n(DEMO, 1) == pytest.approx(-2.25, rel=1e-14)
    assert osc.energy_n(DEMO, 0) == pytest.approx(8.875, rel=1e-14)
    assert osc.energy_n(DEMO, 1) == pytest.approx(13.875, rel=1e-14)
    with pytest.raises(IndexError):
        osc.epsilon_n(DEMO, 2)
    with pytest.raises(IndexError):
        osc.energy_n(DEMO, -1)


@pytest.mark.parametrize("n", [0, 1])
def test_energy_matches_epsilon(n):
    m = DEMO
    eps = osc.epsilon_n(m, n)
    assert osc.energy_n(m, n) == pytest.approx((eps + m.omega**2 * m.radius**4) / (2 * m.radius**2), rel=1e-13)


def test_no_bound_states_when_k0_minus_k_at_most_one():
    m = OscillatorModel(1.0, 1.0, 0.5)  # k0 - k = 0.618
    assert osc.bound_state_count(m) == 0
    assert osc.bound_states(m) == []


def test_marginal_level_is_not_counted():
    # k0 = 3.5, k = 0.5: levels 1.5, 3.5, ... ; 3.5 == k0 gives eps = 0
    m = OscillatorModel(math.sqrt(12.0), 1.0, 0.5)
    assert m.k0 == pytest.approx(3.5, rel=1e-15)
    assert osc.bound_state_count(m) == 1


def test_top_level_stays_negative():
    m = OscillatorModel(math.sqrt(12.0), 1.0, 0.4)  # 2n+1+k = 3.4 < 3.5
    assert osc.bound_state_count(m) == 2
    assert -0.02 < osc.epsilon_n(m, 1) < 0


@pytest.mark.parametrize(
    "kwargs",
    [dict(omega=0.0, radius=1, k=1), dict(omega=1, radius=-1, k=1), dict(omega=1, radius=1, k=math.nan),
     dict(omega=1, radius=1, k=0.75, branch="minus"), dict(omega=1, radius=1, k=1, branch="sideways")],
)
def test_invalid_models(kwargs):
    with pytest.raises((ModelError, DomainError)):
        OscillatorModel(**kwargs)


def test_potential_examples():
    t = 1.0
    expected = 0.5 * (-30.0 / math.cosh(t) ** 2 + 0.75 / math.sinh(t) ** 2) + 15.0
    assert osc.potential(DEMO, t) == pytest.approx(expected, rel=1e-14)
    assert osc.potential(DEMO, -t) == osc.potential(DEMO, t)
    with pytest.raises(DomainError):
        osc.potential(DEMO, 0.0)
    half = OscillatorModel(math.sqrt(30.0), 1.0, 0.5)
    assert osc.potential(half, 0.0) == pytest.approx(0.5 * -30.0 + 15.0)


def test_potential_at_large_tau_is_the_asymptote():
    # sech^2 and csch^2 are ~1e-21 at tau = 25
    assert abs(osc.potential(DEMO, 25.0) - 15.0) <= 1e-15 * 15.0


def test_ambient_potential_agrees_with_tau_form():
    R = 2.0
    m = OscillatorModel(1.3, R, 0.8)
    tau = np.linspace(0.2, 3.0, 9)
    ambient = osc.ambient_potential(m, R * np.cosh(tau), R * np.sinh(tau))
    np.testing.assert_allclose(ambient, osc.potential(m, tau), rtol=1e-12)


def test_reduced_potential_split():
    tau = np.linspace(0.1, 4.0, 7)
    diff = osc.reduced_potential(DEMO, tau) - osc.regular_potential(DEMO, tau)
    np.testing.assert_allclose(diff, 0.75 / np.sinh(tau) ** 2, rtol=1e-13)


@pytest.mark.parametrize("n", [0, 1])
def test_norm_constant_against_quadrature(n):
    assert osc.norm_constant(DEMO, n) == pytest.approx(_quadrature_norm(DEMO, n), rel=1e-12)


@pytest.mark.parametrize(
    "model", [OscillatorModel(2.0, 1.5, 0.3, "minus"), OscillatorModel(0.7, 3.0, 2.2), OscillatorModel(4.0, 1.0, 0.25)]
)
def test_norm_constant_other_models(model):
    for n in range(osc.bound_state_count(model)):
        assert osc.norm_constant(model, n) == pytest.approx(_quadrature_norm(model, n), rel=1e-11)


def test_norm_constant_scales_with_radius():
    # the explicit 1/R under the square root, with omega R^2 held fixed
    a = OscillatorModel(math.sqrt(30.0), 1.0, 1.0)
    b = OscillatorModel(math.sqrt(30.0) / 4.0, 2.0, 1.0)
    assert b.k0 == pytest.approx(a.k0, rel=1e-15)
    for n in range(2):
        assert osc.norm_constant(b, n) / osc.norm_constant(a, n) == pytest.approx(1 / math.sqrt(2), rel=1e-14)


def test_wavefunction_high_precision_value():
    mp.mp.dps = 30
    ref = osc.norm_constant(DEMO, 1) * float(_unnormalized(DEMO, 1, "0.7"))
    assert osc.wavefunction(DEMO, 1, 0.7) == pytest.approx(ref, rel=1e-13)


def test_ground_state_closed_form():
    tau = np.linspace(0.05, 6, 50)
    expected = osc.norm_constant(DEMO, 0) * np.sinh(tau) ** 1.5 * np.cosh(tau) ** (0.5 - 5.5)
    np.testing.assert_allclose(osc.wavefunction(DEMO, 0, tau), expected, rtol=1e-12)


def test_wavefunction_vanishes_at_origin_and_decays():
    assert osc.wavefunction(DEMO, 0, 0.0) == 0.0
    assert abs(osc.wavefunction(DEMO, 1, 40.0)) < 1e-20
    assert np.all(np.isfinite(osc.wavefunction(DEMO, 1, np.array([500.0, 1e4]))))


def test_eval_wavefunction_grid():
    g = osc.eval_wavefunction(DEMO, 1, np.linspace(0, 5, 11))
    assert isinstance(g, GridFunction) and len(g) == 11
    assert g.coordinate_step == pytest.approx(0.5) and g.coordinate_label == "tau"
    with pytest.raises(DomainError):
        osc.eval_wavefunction(DEMO, 0, np.linspace(-1, 1, 5))


def test_parity_extensions():
    m = OscillatorModel(4.0, 1.0, 0.25)
    half = np.linspace(0, 3, 31)
    tau = np.concatenate([-half[:0:-1], half])
    even = osc.wavefunction(m, 1, tau, "even")
    odd = osc.wavefunction(m, 1, tau, "odd")
    np.testing.assert_array_equal(even, even[::-1])
    np.testing.assert_array_equal(odd, -odd[::-1])
    # each half carries 1/2, so the full line carries 1
    full = integrate(lambda t: osc.wavefunction(m, 1, t, "even") ** 2, -30, 30, abs_tol=1e-12)
    assert m.radius * full == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(DomainError):
        osc.wavefunction(DEMO, 0, tau, "odd")  # k = 1 is repulsive at the origin


def test_bound_states_listing():
    states = osc.bound_states(DEMO)
    assert [s.n for s in states] == [0, 1]
    assert states[1].epsilon == pytest.approx(-2.25)
    assert states[0].norm_constant == osc.norm_constant(DEMO, 0)


def test_flat_energy():
    assert osc.flat_energy(1.0, 0.5, "plus", 0) == pytest.approx(1.5)
    assert osc.flat_energy(1.7, 0.3, "minus", 4) - osc.flat_energy(1.7, 0.3, "minus", 3) == pytest.approx(3.4)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_flat_wavefunction_normalized(n):
    omega, k = 1.3, 1.0
    norm = integrate(lambda x: osc.flat_wavefunction_values(omega, k, "plus", n, x) ** 2, 0.0, 15.0, abs_tol=1e-13)
    assert norm == pytest.approx(0.5, abs=1e-10)


def test_flat_wavefunction_examples():
    assert osc.flat_wavefunction_values(1.0, 1.0, "plus", 2, 0.0) == 0.0
    x = np.linspace(0, 4, 9)
    g = osc.flat_wavefunction(1.0, 1.0, "plus", 0, x)
    shape = x**1.5 * np.exp(-0.5 * x**2)
    np.testing.assert_allclose(g.values[1:] / shape[1:], g.values[1] / shape[1], rtol=1e-13)
    assert g.coordinate_label == "x"
    with pytest.raises(DomainError):
        osc.flat_wavefunction_values(1.0, 1.0, "plus", 0, -1.0)


def test_energy_tends_to_flat_level():
    for R in (1e2, 1e3):
        m = OscillatorModel(1.0, R, 1.0)
        assert abs(osc.energy_n(m, 0) - osc.flat_energy(1.0, 1.0, "plus", 0)) < 10.0 / R**2


def test_curved_state_tends_to_flat_state_pointwise():
    x = np.linspace(0.2, 5, 25)
    flat = osc.flat_wavefunction_values(1.0, 1.0, "plus", 1, x)
    errors = []
    for R in (1e2, 1e3, 1e4):
        curved = osc.wavefunction(OscillatorModel(1.0, R, 1.0), 1, x / R)
        errors.append(np.max(np.abs(curved - flat)))
    assert errors[2] < errors[1] < errors[0] and errors[2] < 1e-6

import math

import numpy as np
import pytest

import relaxlab


def test_threshold_and_omega():
    assert relaxlab.threshold_J(0.1) == 4
    assert relaxlab.threshold_J(0.125) == 3
    assert relaxlab.decay_rate_omega(1.0, 0.5) == pytest.approx(2.0, rel=1e-14)
    assert relaxlab.decay_rate_omega(0.0, 0.3) == 0.0


def test_eigenvalues_solve_the_characteristic_polynomial():
    xi, eps, a = [0.7, -1.3], 0.3, [0.5, 2.0]
    A = relaxlab.linear_symbol(xi, eps, a)
    for lam in relaxlab.eigenvalues(xi, eps, a):
        assert abs(np.linalg.det(A - lam * np.eye(3))) < 1e-8 * (1 + np.abs(A).sum(axis=1).max() ** 3)


def test_propagator_is_a_semigroup():
    xi, eps, a = [0.5], 1.0, [1.0]
    P = relaxlab.exact_linear_propagator(xi, eps, a, 0.7) @ relaxlab.exact_linear_propagator(xi, eps, a, 1.1)
    Q = relaxlab.exact_linear_propagator(xi, eps, a, 1.8)
    assert np.abs(P - Q).max() <= 1e-12


def test_overdamping_curve_peaks_at_2S():
    S = 2.0
    rows = relaxlab.overdamping_curve(S, [2 * math.sqrt(S), 0.1, 100.0])
    assert rows[0][1] == pytest.approx(2 * S)
    assert rows[0][2] == "transitional"
    assert rows[1][2] == "high" and rows[2][2] == "low"


def test_fit_rate_exact_power_law():
    t = np.geomspace(1, 1000, 40)
    fit = relaxlab.fit_rate(t, (1 + t) ** -0.25, 1, 1000)
    assert fit["exponent"] == pytest.approx(-0.25, abs=1e-12)
    assert fit["power_law"]
    with pytest.raises(ValueError):
        relaxlab.fit_rate(t, t, 1, 1000, variable="space")


def test_selftest_small():
    s = relaxlab.spectral_selftest(N=32, d=1, fields=3, seed=2)
    assert s["partition_defect"] <= 1e-12
    assert 0.25 <= s["bernstein2"][0] <= s["bernstein2"][1] <= 4


def test_config_roundtrip_and_errors():
    assert "thm3-decay-2d" in relaxlab.preset_names()
    cfg = relaxlab.normalize_config(relaxlab.preset("fig1-overdamping"))
    assert cfg["experiment"] == "overdamping"
    assert relaxlab.config_hash(cfg) == relaxlab.config_hash(relaxlab.preset("fig1-overdamping"))
    with pytest.raises(relaxlab.ConfigError):
        relaxlab.normalize_config({"model": {"a": [-1.0]}})


def test_run_spectrum_experiment():
    out = relaxlab.run({"experiment": "spectrum"})
    assert out["fits"]["passed"]
    assert out["table"].startswith("inv_eps,omega,regime")
    assert out["directory"] == ""

import math

import numpy as np
import pytest

import bohmtoa as bt

CFG = bt.OscillatorConfig(mass=1.0, omega=0.5, hbar=1.0)


def test_config_defaults():
    cfg = bt.OscillatorConfig()
    assert cfg.omega == 0.5
    assert cfg.proper_length == pytest.approx(math.sqrt(2.0), rel=1e-15)


def test_squeeze_matrix_is_unimodular():
    m = bt.squeeze_matrix(bt.SqueezeParams(1.3, 0.7), CFG)
    assert m.det() == pytest.approx(1.0, abs=1e-12)
    e = bt.exp_squeeze_generator(bt.SqueezeParams(1.3, 0.7), CFG)
    assert np.allclose(m.to_list(), e.to_list(), rtol=1e-12, atol=1e-12)


def test_density_normalised():
    st = bt.evolved_state(bt.SqueezeParams(0.8, 1.0), 2.0, CFG)
    x = np.linspace(-30.0, 30.0, 20001)
    assert np.trapezoid(st.density(x), x) == pytest.approx(1.0, abs=1e-8)


def test_trajectory_vectorised_and_periodic():
    sq = bt.SqueezeParams(0.5, 0.0)
    t = np.linspace(0.0, 2 * math.pi / CFG.omega, 7)
    q = bt.trajectory(1.0, t, sq, CFG)
    assert q.shape == t.shape
    assert q[0] == pytest.approx(1.0)
    assert q[-1] == pytest.approx(1.0, rel=1e-12)
    # 2wt = pi is the turning point
    assert bt.trajectory(1.0, math.pi / (2 * CFG.omega), sq, CFG) == pytest.approx(math.e, rel=1e-12)


def test_arrival_endpoints_and_round_trip():
    setup = bt.ArrivalSetup(1.0, bt.SqueezeParams(1.0, 0.0), CFG)
    lo, hi = bt.initial_condition_interval(setup)
    assert bt.time_of_arrival(hi, setup) == pytest.approx(0.0, abs=1e-9)
    assert bt.time_of_arrival(lo, setup) == pytest.approx(math.pi / (2 * CFG.omega), abs=1e-9)
    q0 = 0.5 * (lo + hi)
    t = bt.time_of_arrival(q0, setup)
    assert bt.trajectory(q0, t, setup.squeeze, CFG) == pytest.approx(1.0, rel=1e-9)


def test_toa_pdf_normalised():
    pdf = bt.toa_pdf(bt.ArrivalSetup(1.0, bt.SqueezeParams(1.0, 0.0), CFG))
    tau = np.linspace(pdf.t_min, pdf.t_max, 40001)
    assert np.trapezoid(pdf(tau), tau) == pytest.approx(1.0, abs=1e-6)
    assert pdf(pdf.t_min) == 0.0 and pdf(pdf.t_max) == 0.0
    assert pdf.z == pytest.approx(0.353200469403298468, rel=1e-12)


def test_monte_carlo_deterministic():
    setup = bt.ArrivalSetup(1.0, bt.SqueezeParams(1.0, 0.0), CFG)
    a = bt.toa_histogram_mc(setup, 20000, 11)
    b = bt.toa_histogram_mc(setup, 20000, 11)
    assert a == b
    assert sum(a["counts"]) == a["accepted"]
    assert len(a["edges"]) == 33


def test_counts():
    sq = bt.SqueezeParams(0.5, 0.0)
    w = bt.DetectionWindow.with_default_duration(0.01, 1.0, sq, CFG)
    ns = bt.standard_count(w, sq, CFG)
    assert ns == pytest.approx(0.002154920359782768, rel=1e-9)
    assert bt.bohmian_count(w, sq, CFG) > 0.0
    assert bt.bohmian_count(w, sq, CFG, jacobian=True) != bt.bohmian_count(w, sq, CFG)


def test_errors_map_to_python():
    with pytest.raises(bt.SingularLimitError):
        bt.toa_pdf(bt.ArrivalSetup(1.0, bt.SqueezeParams(0.0, 0.0), CFG))
    with pytest.raises(ValueError):
        bt.OscillatorConfig(mass=-1.0)


def test_validate():
    report = bt.validate()
    assert len(report) == 7
    assert all(c["passed"] for c in report)

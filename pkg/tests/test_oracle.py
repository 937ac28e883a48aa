import json
import math

import numpy as np
import pytest

from vortexquad.atomic import ModifiedMoments
from vortexquad.beam import LGMode, Polarization, Position, field_amplitude, g_profile, mode_power_integral
from vortexquad.constants import EA0_SQ, HBAR
from vortexquad.coupling import Convention, channel_moments, rabi_general
from vortexquad.oracle import (
    OracleReport,
    SuiteSettings,
    dual_quadrature,
    fd_rabi,
    laguerre_series,
    peak_scan,
    run_suite,
)
from vortexquad.specfun import HydrogenicState, hydrogenic_radial

LAMBDA = 685e-9


def test_report_pass_flag_and_json():
    ok = OracleReport("a", 1e-9, 1e-8, {"x": 1.0})
    bad = OracleReport("b", 2e-8, 1e-8)
    assert ok.passed and not bad.passed
    assert json.loads(ok.to_json()) == {"name": "a", "max_rel_error": 1e-9, "tolerance": 1e-8,
                                        "worst_input": {"x": 1.0}, "passed": True}


def test_fd_zero_moments():
    mode = LGMode(LAMBDA, 5 * LAMBDA, 1, 0, 4.0e5)
    assert fd_rabi(mode, ModifiedMoments(0, 0, 0), Position(mode.waist, 0.0)) == 0


def test_fd_gaussian_log_derivative():
    mode = LGMode(LAMBDA, 5 * LAMBDA, 0, 0, 4.0e5)
    X = 0.8 * mode.waist
    pos = Position(X, 0.0)
    u = field_amplitude(mode, pos.rho_bar(mode))
    ratio = fd_rabi(mode, ModifiedMoments(1, 0, 0), pos) * HBAR / (u * EA0_SQ)
    assert ratio.real == pytest.approx(-2 * X / mode.waist**2, rel=1e-8)


def test_fd_rejects_near_axis():
    mode = LGMode(LAMBDA, 5 * LAMBDA, 1, 0, 4.0e5)
    with pytest.raises(ValueError):
        fd_rabi(mode, ModifiedMoments(1, 0, 0), Position(5e-6 * mode.waist, 0.0))


def test_fd_second_order_convergence():
    mode = LGMode(LAMBDA, 5 * LAMBDA, 2, 1, 4.0e5, Polarization.circular(-1))
    moments = channel_moments(0, mode.polarization, 10.0)
    pos = Position.polar(0.9 * mode.waist, 0.3)
    exact = rabi_general(mode, moments, pos)
    # large steps keep truncation above roundoff
    e1 = abs(fd_rabi(mode, moments, pos, step=2e-3) - exact)
    e2 = abs(fd_rabi(mode, moments, pos, step=1e-3) - exact)
    assert e1 / e2 == pytest.approx(4.0, rel=0.05)
    h1, h2 = fd_rabi(mode, moments, pos, step=1e-3), fd_rabi(mode, moments, pos, step=5e-4)
    assert abs(h1 - h2) <= 4 * e2


def test_fd_convention_shares_prefactor():
    mode = LGMode(LAMBDA, 5 * LAMBDA, 2, 0, 4.0e5, Polarization.circular(-1))
    moments = channel_moments(1, mode.polarization, 10.0)
    pos = Position.polar(1.1 * mode.waist, -2.0)
    a = fd_rabi(mode, moments, pos, conv=Convention.RABI_FORM)
    b = fd_rabi(mode, moments, pos, conv=Convention.HAMILTONIAN_FORM)
    assert b == pytest.approx(-0.5 * a, rel=1e-15)


def test_laguerre_series_values():
    assert laguerre_series(2, 1, 2.0) == -1.0
    assert laguerre_series(0, 4, 3.3) == 1.0


def test_dual_quadrature_exponential():
    value, disc = dual_quadrature(lambda r: np.exp(-r), 0.0, 60.0)
    assert value == pytest.approx(1.0, abs=1e-12)
    assert disc <= 1e-12


def test_dual_quadrature_mode_power():
    mode = LGMode(LAMBDA, 5 * LAMBDA, 3, 2)
    value, disc = dual_quadrature(lambda s: 2 * math.pi * s * g_profile(mode, s) ** 2, 0.0, 16.0)
    assert value * mode.waist**2 == pytest.approx(math.pi * mode.waist**2 / 2, rel=1e-9)
    assert mode_power_integral(mode) == pytest.approx(value * mode.waist**2, rel=1e-12)
    assert disc <= 1e-8


def test_dual_quadrature_hydrogenic():
    state = HydrogenicState(6, 0, 8.56)
    value, disc = dual_quadrature(lambda r: (hydrogenic_radial(state, r) * r) ** 2, 0.0, state.r_max)
    assert value == pytest.approx(1.0, abs=1e-10)
    assert disc <= 1e-8


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_peak_scan_doughnut(ell):
    mode = LGMode(LAMBDA, 5 * LAMBDA, ell, 0)
    peak = peak_scan(lambda r: np.abs(g_profile(mode, r)), 1e-6, 4.0)
    assert not peak.at_endpoint
    assert peak.rho == pytest.approx(math.sqrt(ell / 2), abs=1e-10)
    assert peak.value == pytest.approx(g_profile(mode, math.sqrt(ell / 2)), rel=1e-14)


def test_peak_scan_endpoint_flags():
    assert peak_scan(lambda r: np.ones_like(r), 0.0, 1.0).at_endpoint
    rising = peak_scan(lambda r: r, 0.0, 2.0)
    assert rising.at_endpoint and rising.rho == 2.0


def test_peak_scan_argument_checks():
    with pytest.raises(ValueError):
        peak_scan(np.sin, 1.0, 0.0)
    with pytest.raises(ValueError):
        peak_scan(np.sin, 0.0, 1.0, n=50)


@pytest.mark.parametrize("convention", list(Convention))
def test_suite_passes(convention):
    reports = run_suite(SuiteSettings(convention=convention))
    failed = [r.name for r in reports if not r.passed]
    assert not failed
    assert [r.name for r in reports] == sorted(r.name for r in reports)
    assert any(r.name.startswith("general_vs_fd") for r in reports)

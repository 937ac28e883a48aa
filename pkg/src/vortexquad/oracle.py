"""Brute-force cross-checks for the closed forms.

Each check produces an ``OracleReport``; ``run_suite`` runs all of them and
is what the ``validate`` subcommand serializes.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar

from . import atomic
from .absorption import absorption_rate, lorentzian_dos
from .atomic import ModifiedMoments
from .beam import LGMode, Polarization, Position, complex_field, g_profile, mode_power_integral, phase
from .constants import EA0_SQ, HBAR
from .coupling import (
    Convention,
    allowed_channels,
    channel_moments,
    channel_rabi,
    mode_for_channel,
    rabi_general,
    scaling_factors,
)
from .quadrature import adaptive_simpson, gauss_legendre_panels
from .specfun import HydrogenicState, LaguerreParams, assoc_laguerre, assoc_laguerre_deriv, hydrogenic_radial

FD_TOL = 1e-6
QUAD_TOL = 1e-8
ALGEBRA_TOL = 1e-10


@dataclass
class OracleReport:
    name: str
    max_rel_error: float
    tolerance: float
    worst_input: dict = field(default_factory=dict)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = bool(self.max_rel_error <= self.tolerance)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, default=str)


def _worst(errors, inputs, name, tol) -> OracleReport:
    errors = np.asarray(errors, dtype=float)
    i = int(np.argmax(errors)) if errors.size else 0
    worst = inputs[i] if len(inputs) else {}
    return OracleReport(name, float(errors.max()) if errors.size else 0.0, tol, worst)


def rel_error(a, b):
    a, b = np.asarray(a), np.asarray(b)
    scale = np.maximum(np.abs(b), np.finfo(float).tiny)
    return np.abs(a - b) / scale


# --- finite differences -----------------------------------------------------

def fd_rabi(mode: LGMode, moments: ModifiedMoments, pos: Position, step: float = 1e-6,
            conv: Convention = Convention.RABI_FORM):
    """Rabi frequency from central differences of the complex field u e^{i theta}.

    ``step`` is in units of the waist. Uses d(u e^{i theta}) e^{-i theta} =
    du + i u dtheta, so no phase unwrapping is needed.
    """
    rho_bar = np.asarray(pos.rho_bar(mode))
    if np.any(rho_bar <= 10 * step):
        raise ValueError(f"position within 10 steps of the axis (rho_bar={rho_bar.min():.3g}, step={step})")
    h = step * mode.waist
    X, Y, Z = (np.asarray(c, dtype=float) for c in (pos.X, pos.Y, pos.Z))

    def d(dx, dy, dz):
        plus = complex_field(mode, Position(X + dx, Y + dy, Z + dz))
        minus = complex_field(mode, Position(X - dx, Y - dy, Z - dz))
        return (plus - minus) / (2 * h)

    total = moments.Q1 * d(h, 0, 0) + moments.Q2 * d(0, h, 0) + moments.Q3 * d(0, 0, h)
    return conv.prefactor * np.exp(-1j * phase(mode, pos)) * total * EA0_SQ / HBAR


def laguerre_series(p: int, a: int, x: float) -> float:
    """Explicit sum_k (-1)^k C(p+a, p-k) x^k / k!, summed exactly in rationals
    (the alternating terms cancel badly in floating point for x ~ 10)."""
    xq = Fraction(x)
    total = sum(Fraction((-1) ** k * math.comb(p + a, p - k), math.factorial(k)) * xq**k for k in range(p + 1))
    return float(total)


# --- quadrature -------------------------------------------------------------

def dual_quadrature(f, a: float, b: float, rtol: float = 1e-13):
    """Integrate with Gauss-Legendre panels and with adaptive Simpson.

    Returns (panel value, |A - B| / |A|); the caller decides what discrepancy
    is acceptable.
    """
    value = gauss_legendre_panels(f, a, b, rtol=rtol, atol=1e-300)
    check = adaptive_simpson(f, a, b, rtol=max(rtol, 1e-12))
    return value, abs(value - check) / abs(value)


# --- peaks ------------------------------------------------------------------

@dataclass(frozen=True)
class Peak:
    rho: float
    value: float
    at_endpoint: bool = False


def peak_scan(profile, lo: float, hi: float, n: int = 1000, polish_step: float = 1e-5) -> Peak:
    """Locate the maximum of ``profile`` on [lo, hi].

    Grid scan (first maximum wins ties), golden-section inside the bracketing
    cells, then one Newton step on a central-difference derivative to get
    below the ~sqrt(eps) limit of value comparisons.
    """
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    if n < 100:
        raise ValueError(f"need at least 100 grid points, got {n}")
    x = np.linspace(lo, hi, n)
    y = np.asarray(profile(x), dtype=float)
    i = int(np.argmax(y))
    if i == 0 or i == n - 1:
        return Peak(float(x[i]), float(y[i]), at_endpoint=True)
    if y[i] <= y[i - 1] and y[i] <= y[i + 1]:
        return Peak(float(x[i]), float(y[i]), at_endpoint=True)

    neg = lambda t: -float(profile(np.asarray(t)))
    res = minimize_scalar(neg, bracket=(x[i - 1], x[i], x[i + 1]), method="golden", options={"xtol": 1e-12})
    xc = float(res.x)
    h = polish_step * max(1.0, abs(xc))
    fm, f0, fp = (float(profile(np.asarray(t))) for t in (xc - h, xc, xc + h))
    curvature = fp - 2 * f0 + fm
    if curvature < 0:
        shifted = xc - 0.5 * h * (fp - fm) / curvature
        if abs(shifted - xc) < h:
            xc = shifted
    return Peak(xc, float(profile(np.asarray(xc))))


# --- the suite --------------------------------------------------------------

@dataclass(frozen=True)
class SuiteSettings:
    wavelength: float = 685e-9
    waist_over_lambda: float = 5.0
    intensity: float = 4.0e5
    p_values: tuple = (0, 1)
    q_xx: float = 10.0
    q_xz: float = 10.0
    z_eff: float = atomic.Z_EFF_CS
    convention: Convention = Convention.RABI_FORM
    points: int = 100
    seed: int = 20240101


def random_positions(mode: LGMode, n: int, rng: np.random.Generator, lo: float = 0.05, hi: float = 3.0) -> Position:
    rho = rng.uniform(lo, hi, n) * mode.waist
    phi = rng.uniform(-math.pi, math.pi, n)
    Z = rng.uniform(-1.0, 1.0, n) * mode.wavelength
    return Position.polar(rho, phi, Z)


def _sample_inputs(pos: Position, mode: LGMode):
    return [{"rho_bar": float(r), "phi": float(f), "Z": float(z)}
            for r, f, z in zip(pos.rho_bar(mode), pos.phi, pos.Z)]


def check_laguerre() -> list[OracleReport]:
    errs, inputs = [], []
    for p in range(16):
        for a in range(11):
            for x in (0.1, 1.0, 10.0):
                errs.append(rel_error(assoc_laguerre(LaguerreParams(p, a), x), laguerre_series(p, a, x)))
                inputs.append({"p": p, "a": a, "x": x})
    reports = [_worst(errs, inputs, "laguerre_recurrence_vs_series", ALGEBRA_TOL)]

    errs, inputs = [], []
    h = 1e-6
    for p in range(11):
        for a in range(6):
            for x in (0.3, 1.7, 4.2):
                par = LaguerreParams(p, a)
                fd = (assoc_laguerre(par, x + h) - assoc_laguerre(par, x - h)) / (2 * h)
                exact = assoc_laguerre_deriv(par, x)
                scale = max(abs(exact), 1.0)
                errs.append(abs(fd - exact) / scale)
                inputs.append({"p": p, "a": a, "x": x})
    reports.append(_worst(errs, inputs, "laguerre_derivative_vs_fd", 1e-7))
    return reports


def check_hydrogenic(z_eff: float) -> list[OracleReport]:
    errs, discrepancies, inputs = [], [], []
    for n in range(1, 8):
        for L in range(n):
            state = HydrogenicState(n, L, z_eff)
            value, disc = dual_quadrature(lambda r: (hydrogenic_radial(state, r) * r) ** 2, 0.0, state.r_max)
            errs.append(abs(value - 1.0))
            discrepancies.append(disc)
            inputs.append({"n": n, "L": L, "Z": z_eff})
    return [_worst(errs, inputs, "hydrogenic_normalization", 1e-10),
            _worst(discrepancies, inputs, "hydrogenic_normalization_dual_quadrature", QUAD_TOL)]


def check_matrix_elements(z_eff: float) -> list[OracleReport]:
    errs, inputs = [], []
    for m in (0, 1, 2):
        upper = atomic.cs_5d(m)
        a = atomic.radial_integral(upper.state(z_eff), atomic.CS_6S.state(z_eff), "gauss")
        b = atomic.radial_integral(upper.state(z_eff), atomic.CS_6S.state(z_eff), "simpson")
        errs.append(abs(a - b) / abs(a))
        inputs.append({"upper_m": m, "Z": z_eff})
    return [_worst(errs, inputs, "matrix_element_dual_quadrature", QUAD_TOL)]


def check_mode_power() -> list[OracleReport]:
    errs, inputs = [], []
    for ell in range(6):
        for p in range(4):
            mode = LGMode(685e-9, 5 * 685e-9, ell, p)
            exact = math.pi * mode.waist**2 / 2
            errs.append(abs(mode_power_integral(mode) - exact) / exact)
            inputs.append({"ell": ell, "p": p})
    return [_worst(errs, inputs, "mode_power_invariance", 1e-9)]


def check_peaks() -> list[OracleReport]:
    errs, inputs = [], []
    for ell in (1, 2, 3):
        mode = LGMode(685e-9, 5 * 685e-9, ell, 0)
        peak = peak_scan(lambda r: np.abs(g_profile(mode, r)), 1e-6, 4.0)
        errs.append(abs(peak.rho - math.sqrt(ell / 2)))
        inputs.append({"ell": ell})
    return [_worst(errs, inputs, "doughnut_peak_location", ALGEBRA_TOL)]


def check_lorentzian() -> list[OracleReport]:
    gamma, omega_a = 3.34e7, 0.0
    width = 1e3 * gamma
    value = gauss_legendre_panels(lambda w: lorentzian_dos(w, omega_a, gamma), -width, width, rtol=1e-14)
    tail = 1.0 - (2 / math.pi) * math.atan(width / (gamma / 2))
    resonant = absorption_rate(1.0e6, omega_a, omega_a, gamma)
    identity = abs(resonant - 2 * math.pi * 1.0e12 * lorentzian_dos(omega_a, omega_a, gamma)) / resonant
    return [
        OracleReport("lorentzian_normalization_with_tail", abs(value + tail - 1.0), 1e-6, {"half_width_over_gamma": 1e3}),
        OracleReport("rate_lorentzian_identity", float(identity), 1e-14, {"rabi": 1.0e6}),
    ]


def check_channels(settings: SuiteSettings) -> list[OracleReport]:
    rng = np.random.default_rng(settings.seed)
    line = atomic.TransitionLine(omega_a=2 * math.pi * 299_792_458.0 / settings.wavelength, gamma=3.34e7)
    channels = allowed_channels(line, [Polarization.circular(-1), Polarization.circular(1)])
    reports = []
    for channel in channels:
        for p in settings.p_values:
            mode = mode_for_channel(channel, settings.wavelength, settings.waist_over_lambda * settings.wavelength,
                                    settings.intensity, p)
            scaling = scaling_factors(mode, settings.q_xx, settings.q_xz)
            moments = channel_moments(channel.delta_m, mode.polarization, settings.q_xx, settings.q_xz)
            pos = random_positions(mode, settings.points, rng)
            inputs = _sample_inputs(pos, mode)
            tag = f"dm={channel.delta_m:+d},l={channel.ell:+d},sz={channel.sigma_z:+d},p={p}"

            closed = channel_rabi(mode, scaling, channel.delta_m, pos, settings.convention)
            general = rabi_general(mode, moments, pos, settings.convention)
            fd = fd_rabi(mode, moments, pos, conv=settings.convention)
            reports.append(_worst(rel_error(closed, general), inputs, f"closed_vs_general[{tag}]", ALGEBRA_TOL))
            reports.append(_worst(rel_error(general, fd), inputs, f"general_vs_fd[{tag}]", FD_TOL))

            # |Omega| depends on rho only
            rho_bar = np.linspace(0.05, 3.0, 40)
            phis = np.linspace(-math.pi, math.pi, 17)[:-1]
            R, P = np.meshgrid(rho_bar, phis, indexing="ij")
            mod = np.abs(channel_rabi(mode, scaling, channel.delta_m, Position.polar(R * mode.waist, P),
                                      settings.convention))
            spread = (mod.max(axis=1) - mod.min(axis=1)) / np.maximum(mod.max(axis=1), 1e-300)
            reports.append(_worst(spread, [{"rho_bar": float(r)} for r in rho_bar],
                                  f"azimuthal_invariance[{tag}]", 1e-12))

    # forbidden pairs: gating factor kills the closed form everywhere
    for dm, sigma in ((1, 1), (-1, -1), (2, 1), (-2, -1)):
        mode = LGMode(settings.wavelength, settings.waist_over_lambda * settings.wavelength, dm - sigma, 0,
                      settings.intensity, Polarization.circular(sigma))
        scaling = scaling_factors(mode, settings.q_xx, settings.q_xz)
        pos = random_positions(mode, settings.points, rng)
        worst = float(np.max(np.abs(channel_rabi(mode, scaling, dm, pos, settings.convention))))
        reports.append(OracleReport(f"gating_zero[dm={dm:+d},sz={sigma:+d}]", worst, 0.0))
    return reports


def run_suite(settings: SuiteSettings = SuiteSettings()) -> list[OracleReport]:
    reports = []
    reports += check_laguerre()
    reports += check_hydrogenic(settings.z_eff)
    reports += check_matrix_elements(settings.z_eff)
    reports += check_mode_power()
    reports += check_peaks()
    reports += check_lorentzian()
    reports += check_channels(settings)
    return sorted(reports, key=lambda r: r.name)

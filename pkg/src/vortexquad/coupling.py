"""Quadrupole Rabi frequency of a circularly polarized LG mode.

The general form contracts the log-gradient of the complex field,
(1/u) grad u + i grad theta, with the modified moments (Q1, Q2, Q3). The
channel functions are its closed-form specializations for the moment
patterns of an s -> d transition with dm = 0, +/-1, +/-2.

Lengths inside the closed forms are in units of the waist (X_bar = X / w0).
Moments are in e*a0^2, frequencies in rad/s.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .atomic import ModifiedMoments, TransitionLine
from .beam import LGMode, Polarization, Position, radial_terms
from .constants import EA0_SQ, HBAR


class Convention(enum.Enum):
    """Overall prefactor of the Rabi frequency.

    RABI_FORM uses 1/hbar (the normalization the scaling factors assume);
    HAMILTONIAN_FORM keeps the -1/(2 hbar) that comes straight from
    the -1/2 Q_ij grad_i E_j interaction.
    """

    RABI_FORM = "paper-eq12"
    HAMILTONIAN_FORM = "hamiltonian-eq5p"

    @property
    def prefactor(self) -> float:
        return 1.0 if self is Convention.RABI_FORM else -0.5


class ChannelKind(enum.Enum):
    NO_OAM_TRANSFER = "NoOamTransfer"
    OAM_TRANSFER = "OamTransfer"
    TAM_TRANSFER = "TamTransfer"


class SelectionRuleError(ValueError):
    """A (dm, l, sigma_z) combination violates a selection rule."""

    def __init__(self, rule: str, detail: str):
        super().__init__(f"{rule}: {detail}")
        self.rule = rule


@dataclass(frozen=True)
class Channel:
    delta_m: int
    ell: int
    sigma_z: int

    @property
    def kind(self) -> ChannelKind:
        return {0: ChannelKind.NO_OAM_TRANSFER, 1: ChannelKind.OAM_TRANSFER,
                2: ChannelKind.TAM_TRANSFER}[abs(self.delta_m)]

    @property
    def polarization(self) -> Polarization:
        return Polarization.circular(self.sigma_z)

    @property
    def dominant(self) -> bool:
        return abs(self.delta_m) == 1

    def mirror(self) -> "Channel":
        return Channel(-self.delta_m, -self.ell, -self.sigma_z)


@dataclass(frozen=True)
class RabiScaling:
    omega_01: float
    omega_02: float
    omega_0: float
    xi: float


def scaling_factors(mode: LGMode, q_xx: float, q_xz: float | None = None) -> RabiScaling:
    """Omega_01 = E|Q_xx|/(hbar w0), Omega_02 likewise with |Q_xz|, and
    Omega_0 = Omega_01 * w0/lambda. Moments are magnitudes in e*a0^2."""
    if not mode.intensity > 0:
        raise ValueError("scaling factors need a positive intensity")
    q_xz = q_xx if q_xz is None else q_xz
    field = mode.e_k00 / (HBAR * mode.waist)
    omega_01 = field * abs(q_xx) * EA0_SQ
    omega_02 = field * abs(q_xz) * EA0_SQ
    return RabiScaling(omega_01, omega_02, omega_01 * mode.xi, mode.xi)


def channel_moments(delta_m: int, pol: Polarization, q_xx: float, q_xz: float | None = None) -> ModifiedMoments:
    """Modified moments of the s(m=0) -> d(m=dm) transition built from the
    magnitudes |Q_xx|, |Q_xz| (overall phases dropped)."""
    q_xx = abs(q_xx)
    q_xz = q_xx if q_xz is None else abs(q_xz)
    a, b = pol.alpha, pol.beta
    if delta_m == 0:
        return ModifiedMoments(a * q_xx, b * q_xx, 0j)
    if abs(delta_m) == 1:
        return ModifiedMoments(0j, 0j, 1j * q_xz * pol.gating(delta_m))
    if abs(delta_m) == 2:
        s = delta_m // 2
        q1 = q_xx * pol.gating(s)
        return ModifiedMoments(q1, 1j * s * q1, 0j)
    raise SelectionRuleError("quadrupole dm rule", f"dm={delta_m} not in {{0, +/-1, +/-2}}")


def _require_off_axis(rho_bar):
    if np.any(np.asarray(rho_bar) <= 0.0):
        raise ValueError("position on the beam axis: the gradient terms are singular at rho = 0")


def amplitude_gradients(mode: LGMode, pos: Position):
    """Return (u, u*G, u*H) in V/m and V/m^2.

    u*G = du/dX + i u dtheta/dX is assembled without dividing by the
    Laguerre factor, so it stays finite at the radial nodes of the mode.
    """
    w0 = mode.waist
    X, Y = np.asarray(pos.X, dtype=float), np.asarray(pos.Y, dtype=float)
    rho2 = X**2 + Y**2
    rho = np.sqrt(rho2)
    _require_off_axis(rho)
    envelope, lag, dlag = radial_terms(mode, rho / w0)
    g = envelope * lag
    ell, ell_abs = mode.ell, abs(mode.ell)
    radial_lag = envelope * dlag / (rho * w0)
    uG = g * (ell_abs * X / rho2 - 2 * X / w0**2 - 1j * ell * Y / rho2) + radial_lag * X
    uH = g * (ell_abs * Y / rho2 - 2 * Y / w0**2 + 1j * ell * X / rho2) + radial_lag * Y
    E = mode.e_k00
    return E * g, E * uG, E * uH


def gradient_G(mode: LGMode, pos: Position):
    """(1/u) du/dX + i dtheta/dX in 1/m."""
    u, uG, _ = amplitude_gradients(mode, pos)
    return uG / u


def gradient_H(mode: LGMode, pos: Position):
    """(1/u) du/dY + i dtheta/dY in 1/m."""
    u, _, uH = amplitude_gradients(mode, pos)
    return uH / u


def rabi_general(mode: LGMode, moments: ModifiedMoments, pos: Position,
                 conv: Convention = Convention.RABI_FORM):
    """prefactor * (u/hbar) (G Q1 + H Q2 + i k Q3)."""
    u, uG, uH = amplitude_gradients(mode, pos)
    total = uG * moments.Q1 + uH * moments.Q2 + 1j * mode.k * u * moments.Q3
    return conv.prefactor * total * EA0_SQ / HBAR


def _reduced(mode: LGMode, pos: Position):
    Xb = np.asarray(pos.X, dtype=float) / mode.waist
    Yb = np.asarray(pos.Y, dtype=float) / mode.waist
    rb = np.hypot(Xb, Yb)
    return Xb, Yb, rb


def rabi_channel_dm0(mode: LGMode, scaling: RabiScaling, pol: Polarization, pos: Position,
                     conv: Convention = Convention.RABI_FORM):
    """dm = 0 closed form.

    Omega_01 g [(|l|/rb^2 - 2 + (1/rb) L'/L)(a Xb + b Yb) + (i l/rb^2)(b Xb - a Yb)]
    """
    Xb, Yb, rb = _reduced(mode, pos)
    _require_off_axis(rb)
    envelope, lag, dlag = radial_terms(mode, rb)
    g = envelope * lag
    a, b = pol.alpha, pol.beta
    radial = g * (abs(mode.ell) / rb**2 - 2.0) + envelope * dlag / rb
    azimuthal = g * 1j * mode.ell / rb**2
    return conv.prefactor * scaling.omega_01 * (radial * (a * Xb + b * Yb) + azimuthal * (b * Xb - a * Yb))


def rabi_channel_dm1(mode: LGMode, scaling: RabiScaling, pol: Polarization, rho_bar, delta_m: int = 1,
                     conv: Convention = Convention.RABI_FORM):
    """dm = +/-1 closed form: -Omega_02 (a +/- i b) k w0 g(rb). Depends on rb only."""
    if abs(delta_m) != 1:
        raise ValueError(f"dm=+/-1 closed form called with dm={delta_m}")
    envelope, lag, _ = radial_terms(mode, rho_bar)
    g = envelope * lag
    return -conv.prefactor * scaling.omega_02 * pol.gating(delta_m) * mode.k * mode.waist * g


def rabi_channel_dm2(mode: LGMode, scaling: RabiScaling, pol: Polarization, pos: Position, delta_m: int = 2,
                     conv: Convention = Convention.RABI_FORM):
    """dm = +/-2 closed form, s = sign(dm):

    Omega_01 g (a + i s b)(Xb + i s Yb)((|l| - s l)/rb^2 - 2 + (1/rb) L'/L)

    For l > 0 the bracket is -2 + ... when dm = +2 and 2|l|/rb^2 - 2 + ...
    when dm = -2. The |l| - s*l form keeps the mirror channels (l < 0) exact.
    """
    if abs(delta_m) != 2:
        raise ValueError(f"dm=+/-2 closed form called with dm={delta_m}")
    s = delta_m // 2
    Xb, Yb, rb = _reduced(mode, pos)
    _require_off_axis(rb)
    envelope, lag, dlag = radial_terms(mode, rb)
    g = envelope * lag
    bracket = g * ((abs(mode.ell) - s * mode.ell) / rb**2 - 2.0) + envelope * dlag / rb
    return conv.prefactor * scaling.omega_01 * pol.gating(s) * (Xb + 1j * s * Yb) * bracket


def channel_rabi(mode: LGMode, scaling: RabiScaling, delta_m: int, pos: Position,
                 conv: Convention = Convention.RABI_FORM, pol: Polarization | None = None):
    """Dispatch to the closed form for ``delta_m`` using the mode's polarization."""
    pol = mode.polarization if pol is None else pol
    if delta_m == 0:
        return rabi_channel_dm0(mode, scaling, pol, pos, conv)
    if abs(delta_m) == 1:
        return rabi_channel_dm1(mode, scaling, pol, pos.rho_bar(mode), delta_m, conv)
    if abs(delta_m) == 2:
        return rabi_channel_dm2(mode, scaling, pol, pos, delta_m, conv)
    raise SelectionRuleError("quadrupole dm rule", f"dm={delta_m} not in {{0, +/-1, +/-2}}")


GATING_TOL = 1e-12


def check_channel(line: TransitionLine, channel: Channel) -> None:
    """Raise SelectionRuleError naming the first rule ``channel`` breaks."""
    if line.multipolarity_L != 2:
        raise SelectionRuleError(
            "multipolarity", f"only quadrupole transitions (L=2) are supported, got L={line.multipolarity_L}")
    if channel.sigma_z not in (-1, 1):
        raise SelectionRuleError(
            "circular polarization", f"sigma_z must be +/-1, got {channel.sigma_z}")
    if channel.delta_m not in (0, 1, -1, 2, -2):
        raise SelectionRuleError("quadrupole dm rule", f"dm={channel.delta_m} not in {{0, +/-1, +/-2}}")
    if channel.ell + channel.sigma_z != channel.delta_m:
        raise SelectionRuleError(
            "TAM conservation",
            f"l + sigma_z = {channel.ell + channel.sigma_z} but dm = {channel.delta_m}")
    if channel.ell + channel.sigma_z > line.multipolarity_L:
        raise SelectionRuleError(
            "multipolarity bound", f"l + sigma_z = {channel.ell + channel.sigma_z} exceeds L = {line.multipolarity_L}")
    if channel.delta_m != 0:
        s = 1 if channel.delta_m > 0 else -1
        if abs(channel.polarization.gating(s)) < GATING_TOL:
            raise SelectionRuleError(
                "polarization gating",
                f"alpha {'+' if s > 0 else '-'} i beta = 0 for sigma_z={channel.sigma_z}, dm={channel.delta_m}")


def allowed_channels(line: TransitionLine, pol_set) -> list[Channel]:
    """Channels (dm, l, sigma_z) open for each circular polarization in ``pol_set``."""
    if line.multipolarity_L != 2:
        raise SelectionRuleError(
            "multipolarity", f"only quadrupole transitions (L=2) are supported, got L={line.multipolarity_L}")
    channels: list[Channel] = []
    for pol in pol_set:
        spin = pol.spin
        if abs(abs(spin) - 1.0) > 1e-9:
            raise SelectionRuleError(
                "circular polarization", f"sigma_z={spin:.3g}; only circular polarization is in scope")
        sigma = int(round(spin))
        for dm in (0, 1, 2, -1, -2):
            candidate = Channel(dm, dm - sigma, sigma)
            try:
                check_channel(line, candidate)
            except SelectionRuleError:
                continue
            if candidate not in channels:
                channels.append(candidate)
    return channels


def mode_for_channel(channel: Channel, wavelength: float, waist: float, intensity: float, p: int = 0) -> LGMode:
    return LGMode(wavelength, waist, channel.ell, p, intensity, channel.polarization)


def rabi_profile(mode: LGMode, scaling: RabiScaling, delta_m: int, rho_bar,
                 conv: Convention = Convention.RABI_FORM):
    """Closed-form Rabi frequency along phi = 0 (the modulus is phi-independent
    for circular polarization)."""
    rho_bar = np.asarray(rho_bar, dtype=float)
    pos = Position(rho_bar * mode.waist, np.zeros_like(rho_bar))
    return channel_rabi(mode, scaling, delta_m, pos, conv)

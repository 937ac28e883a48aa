"""Golden-rule absorption rate with a Lorentzian band for the upper level."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .atomic import TransitionLine
from .beam import LGMode
from .constants import HBAR
from .coupling import Channel, Convention, RabiScaling, check_channel, rabi_profile


class Validity(enum.Enum):
    GOLDEN_RULE_OK = "GoldenRuleOk"
    STRONG_COUPLING_WARNING = "StrongCouplingWarning"


@dataclass(frozen=True)
class Detuning:
    """Drive frequency, stored as detuning from resonance in units of gamma."""

    over_gamma: float = 0.0

    @classmethod
    def from_omega(cls, omega: float, line: TransitionLine) -> "Detuning":
        return cls((omega - line.omega_a) / line.gamma)

    def omega(self, line: TransitionLine) -> float:
        return line.omega_a + self.over_gamma * line.gamma


@dataclass(frozen=True)
class AbsorptionResult:
    rho_bar: float
    rate: float
    rate_over_gamma: float
    rabi: complex
    validity: Validity


def lorentzian_dos(omega, omega_a, gamma):
    """(1/pi)(gamma/2) / ((w - w_a)^2 + (gamma/2)^2), normalized to 1 over w."""
    if not gamma > 0:
        raise ValueError(f"linewidth must be positive, got {gamma}")
    half = 0.5 * gamma
    return half / (math.pi * ((np.asarray(omega) - omega_a) ** 2 + half**2))


def absorption_rate(rabi, omega, omega_a, gamma):
    """gamma |Omega|^2 / ((w - w_a)^2 + (gamma/2)^2), in 1/s."""
    if not gamma > 0:
        raise ValueError(f"linewidth must be positive, got {gamma}")
    return gamma * np.abs(rabi) ** 2 / ((np.asarray(omega) - omega_a) ** 2 + (0.5 * gamma) ** 2)


def transition_matrix_element(rabi, theta):
    """hbar Omega exp(i theta), in joules."""
    return HBAR * rabi * np.exp(1j * np.asarray(theta))


def validity(rabi, gamma: float):
    return np.where(np.abs(rabi) > gamma, Validity.STRONG_COUPLING_WARNING, Validity.GOLDEN_RULE_OK)


def rate_profile(mode: LGMode, channel: Channel, line: TransitionLine, scaling: RabiScaling, grid,
                 detuning: Detuning = Detuning(), conv: Convention = Convention.RABI_FORM) -> list[AbsorptionResult]:
    """Absorption rate at each rho_bar of ``grid``, ordered as given."""
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty radial grid")
    check_channel(line, channel)
    if mode.ell != channel.ell or round(mode.polarization.spin) != channel.sigma_z:
        raise ValueError(f"mode (l={mode.ell}, sigma_z={mode.polarization.spin:.3g}) does not carry channel {channel}")
    rabi = rabi_profile(mode, scaling, channel.delta_m, grid, conv)
    # pass the detuning itself: w - w_a formed from ~1e15 rad/s values loses ~8 digits
    rates = absorption_rate(rabi, detuning.over_gamma * line.gamma, 0.0, line.gamma)
    flags = validity(rabi, line.gamma)
    return [
        AbsorptionResult(float(r), float(rate), float(rate / line.gamma), complex(w), flag)
        for r, rate, w, flag in zip(grid, rates, rabi, flags)
    ]

"""Quadrupole coupling of two-level atoms to circularly polarized
Laguerre-Gaussian beams: Rabi frequencies, selection rules and golden-rule
absorption rates."""

from .absorption import AbsorptionResult, Detuning, Validity, absorption_rate, lorentzian_dos, rate_profile
from .atomic import AtomicLevel, ModifiedMoments, QuadrupoleTensor, TransitionLine, modified_moments, quadrupole_tensor
from .beam import LGMode, Polarization, Position, field_amplitude, g_profile, mode_power_integral, phase
from .coupling import (
    Channel,
    ChannelKind,
    Convention,
    RabiScaling,
    SelectionRuleError,
    allowed_channels,
    channel_moments,
    channel_rabi,
    rabi_general,
    scaling_factors,
)

__version__ = "0.1.0"

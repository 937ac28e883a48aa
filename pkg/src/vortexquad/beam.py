"""Laguerre-Gaussian modes near the waist.

The phase is the paraxial near-waist form kZ + l*phi - w*t: no Gouy phase,
no wavefront curvature and no Z-dependent spreading.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import C, EPS0
from .quadrature import gauss_legendre_panels
from .specfun import LaguerreParams, assoc_laguerre, assoc_laguerre_deriv, log_factorial_ratio


@dataclass(frozen=True)
class Polarization:
    """Transverse polarization (alpha, beta), renormalized on construction.

    ``spin`` is sigma_z = i(alpha beta* - beta alpha*): +1 for (1, i)/sqrt2,
    -1 for (1, -i)/sqrt2, 0 for any real pair.
    """

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        norm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
        if norm == 0.0:
            raise ValueError("polarization vector must be non-zero")
        object.__setattr__(self, "alpha", a / norm)
        object.__setattr__(self, "beta", b / norm)

    @classmethod
    def circular(cls, sigma_z: int) -> "Polarization":
        if sigma_z not in (-1, 1):
            raise ValueError(f"circular polarization needs sigma_z = +/-1, got {sigma_z}")
        return cls(1.0, 1j * sigma_z)

    @classmethod
    def linear_x(cls) -> "Polarization":
        return cls(1.0, 0.0)

    @property
    def spin(self) -> float:
        a, b = self.alpha, self.beta
        return (1j * (a * b.conjugate() - b * a.conjugate())).real

    def gating(self, sign: int) -> complex:
        """alpha + i*sign*beta, the factor that switches the |dm| >= 1 channels."""
        return self.alpha + 1j * sign * self.beta


@dataclass(frozen=True)
class LGMode:
    wavelength: float
    waist: float
    ell: int = 0
    p: int = 0
    intensity: float = 0.0
    polarization: Polarization = field(default_factory=Polarization.linear_x)

    def __post_init__(self):
        if not self.wavelength > 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if not self.waist > 0:
            raise ValueError(f"waist must be positive, got {self.waist}")
        if self.intensity < 0:
            raise ValueError(f"intensity must be non-negative, got {self.intensity}")
        if self.p < 0:
            raise ValueError(f"radial number must be non-negative, got {self.p}")

    @property
    def k(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def omega(self) -> float:
        return C * self.k

    @property
    def xi(self) -> float:
        return self.waist / self.wavelength

    @property
    def e_k00(self) -> float:
        """Plane-wave field amplitude sqrt(2I / (eps0 c)) in V/m."""
        return math.sqrt(2.0 * self.intensity / (EPS0 * C))

    @property
    def laguerre(self) -> LaguerreParams:
        return LaguerreParams(self.p, abs(self.ell))


@dataclass(frozen=True)
class Position:
    """Centre-of-mass position in metres; fields may be numpy arrays."""

    X: float
    Y: float
    Z: float = 0.0

    @classmethod
    def polar(cls, rho, phi, Z=0.0) -> "Position":
        return cls(rho * np.cos(phi), rho * np.sin(phi), Z)

    @property
    def rho(self):
        return np.hypot(self.X, self.Y)

    @property
    def phi(self):
        return np.arctan2(self.Y, self.X)

    def rho_bar(self, mode: LGMode):
        return self.rho / mode.waist


def radial_terms(mode: LGMode, rho_bar):
    """Pieces of g_{l,p}: (envelope, L, dL/d(rho_bar)) with g = envelope * L.

    Splitting g this way lets callers form g * (1/L) dL/drho_bar without
    dividing by L, which vanishes at the radial nodes.
    """
    rho_bar = np.asarray(rho_bar, dtype=float)
    ell_abs = abs(mode.ell)
    envelope = (
        math.exp(0.5 * log_factorial_ratio(mode.p, ell_abs))
        * (math.sqrt(2.0) * rho_bar) ** ell_abs
        * np.exp(-rho_bar**2)
    )
    x = 2.0 * rho_bar**2
    lag = assoc_laguerre(mode.laguerre, x)
    # chain rule through the argument 2 rho_bar^2
    dlag = assoc_laguerre_deriv(mode.laguerre, x) * 4.0 * rho_bar
    return envelope, lag, dlag


def g_profile(mode: LGMode, rho_bar):
    """Dimensionless LG amplitude g_{l,p}(rho_bar), equal to 1 on axis for LG00."""
    envelope, lag, _ = radial_terms(mode, rho_bar)
    out = envelope * lag
    return float(out) if np.ndim(out) == 0 else out


def field_amplitude(mode: LGMode, rho_bar):
    """u = E_k00 * g(rho_bar) in V/m."""
    return mode.e_k00 * g_profile(mode, rho_bar)


def phase(mode: LGMode, pos: Position, t: float = 0.0):
    return mode.k * pos.Z + mode.ell * pos.phi - mode.omega * t


def complex_field(mode: LGMode, pos: Position, t: float = 0.0):
    """Scalar field u * exp(i theta) at ``pos``."""
    return field_amplitude(mode, pos.rho_bar(mode)) * np.exp(1j * phase(mode, pos, t))


def mode_power_integral(mode: LGMode) -> float:
    """int_0^inf g^2 2 pi rho d rho in m^2; pi w0^2 / 2 for every (l, p)."""
    rho_cut = 12.0 + math.sqrt(abs(mode.ell) + 2 * mode.p)
    value = gauss_legendre_panels(
        lambda s: 2.0 * math.pi * s * g_profile(mode, s) ** 2, 0.0, rho_cut, rtol=1e-14
    )
    return mode.waist**2 * value

"""Quadrupole matrix elements between hydrogen-like states.

Radial integrals use composite Gauss-Legendre panels, with adaptive Simpson
available as an independent cross-check. Angular integrals are done on a
product grid (Gauss-Legendre in cos(theta), trapezoid in phi), which is exact
for the low-order harmonics involved. Spherical harmonics follow the
Condon-Shortley phase convention.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import lpmv

from .beam import Polarization
from .quadrature import adaptive_simpson, gauss_legendre_panels
from .specfun import HydrogenicState, hydrogenic_radial

AXES = {"x": 0, "y": 1, "z": 2}
Z_EFF_CS = 8.56
NOISE_FLOOR = 1e-12


@dataclass(frozen=True)
class AtomicLevel:
    n: int
    L: int
    m: int = 0

    def __post_init__(self):
        if not abs(self.m) <= self.L <= self.n - 1:
            raise ValueError(f"need |m| <= L <= n-1, got n={self.n}, L={self.L}, m={self.m}")

    def state(self, Z: float) -> HydrogenicState:
        return HydrogenicState(self.n, self.L, Z)


CS_6S = AtomicLevel(6, 0, 0)


def cs_5d(m: int) -> AtomicLevel:
    return AtomicLevel(5, 2, m)


@dataclass(frozen=True)
class QuadrupoleTensor:
    """Symmetric 3x3 complex tensor in units of e*a0^2."""

    Q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.Q, dtype=complex)
        if q.shape != (3, 3):
            raise ValueError(f"quadrupole tensor must be 3x3, got {q.shape}")
        object.__setattr__(self, "Q", q)

    def __getitem__(self, component: str) -> complex:
        a, b = component
        return complex(self.Q[AXES[a], AXES[b]])

    @property
    def largest(self) -> float:
        return float(np.max(np.abs(self.Q)))


@dataclass(frozen=True)
class ModifiedMoments:
    """Polarization-contracted moments Q_j = alpha Q_jx + beta Q_jy."""

    Q1: complex
    Q2: complex
    Q3: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.Q1, self.Q2, self.Q3], dtype=complex)


@dataclass(frozen=True)
class TransitionLine:
    omega_a: float
    gamma: float
    multipolarity_L: int = 2
    lower: AtomicLevel = CS_6S
    upper: AtomicLevel = field(default_factory=lambda: cs_5d(0))

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"linewidth must be positive, got {self.gamma}")
        if not self.omega_a > 0:
            raise ValueError(f"transition frequency must be positive, got {self.omega_a}")
        if self.gamma / self.omega_a > 1e-3:
            warnings.warn(
                f"linewidth/frequency = {self.gamma / self.omega_a:.3g} is not small; "
                "the Lorentzian band picture is questionable",
                stacklevel=2,
            )


def spherical_harmonic(L: int, m: int, theta, phi):
    """Y_L^m(theta, phi) with the Condon-Shortley phase."""
    if abs(m) > L:
        return np.zeros(np.broadcast(theta, phi).shape, dtype=complex)
    mm = abs(m)
    norm = math.sqrt((2 * L + 1) / (4 * math.pi) * math.exp(math.lgamma(L - mm + 1) - math.lgamma(L + mm + 1)))
    # lpmv already carries (-1)^m
    y = norm * lpmv(mm, L, np.cos(theta)) * np.exp(1j * mm * phi)
    if m < 0:
        y = (-1) ** mm * np.conj(y)
    return y


@lru_cache(maxsize=None)
def _angular_grid(n_theta: int, n_phi: int):
    mu, w_mu = np.polynomial.legendre.leggauss(n_theta)
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    theta = np.arccos(mu)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    W = np.outer(w_mu, np.full(n_phi, 2 * math.pi / n_phi))
    n_hat = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)])
    return T, P, W, n_hat


def angular_integral(upper: AtomicLevel, lower: AtomicLevel, component: str,
                     n_theta: int = 64, n_phi: int = 128) -> complex:
    """int Y_upper^* n_a n_b Y_lower dOmega over the unit sphere."""
    a, b = (AXES[c] for c in component)
    T, P, W, n_hat = _angular_grid(n_theta, n_phi)
    integrand = np.conj(spherical_harmonic(upper.L, upper.m, T, P)) * n_hat[a] * n_hat[b] \
        * spherical_harmonic(lower.L, lower.m, T, P)
    return complex(np.sum(W * integrand))


def _radial_integrand(upper: HydrogenicState, lower: HydrogenicState):
    return lambda r: hydrogenic_radial(upper, r) * hydrogenic_radial(lower, r) * r**4


@lru_cache(maxsize=None)
def radial_integral(upper: HydrogenicState, lower: HydrogenicState, scheme: str = "gauss") -> float:
    """int_0^rmax R_upper R_lower r^4 dr in a0^2."""
    r_max = max(upper.r_max, lower.r_max)
    f = _radial_integrand(upper, lower)
    if scheme == "gauss":
        return gauss_legendre_panels(f, 0.0, r_max, rtol=1e-13, atol=1e-15)
    if scheme == "simpson":
        # 1e-13 sits below the roundoff floor of the Simpson differences
        return adaptive_simpson(f, 0.0, r_max, rtol=1e-12)
    raise ValueError(f"unknown quadrature scheme {scheme!r}")


def quadrupole_matrix_element(lower: AtomicLevel, upper: AtomicLevel, component: str,
                              Z: float = Z_EFF_CS, scheme: str = "gauss") -> complex:
    """<upper| x_a x_b |lower> in e*a0^2 (radial part times angular part)."""
    radial = radial_integral(upper.state(Z), lower.state(Z), scheme)
    return radial * angular_integral(upper, lower, component)


def quadrupole_tensor(lower: AtomicLevel, upper: AtomicLevel, Z: float = Z_EFF_CS,
                      scheme: str = "gauss") -> QuadrupoleTensor:
    """Coupling tensor for absorption lower -> upper.

    Entries are the complex conjugates of ``quadrupole_matrix_element``, i.e.
    <lower| x_a x_b |upper>. In this orientation the moments for
    upper.m = +1 are proportional to (alpha + i beta) and those for
    upper.m = +2 satisfy Q2 = i Q1, which is the labelling the channel
    formulas in ``coupling`` use.
    """
    radial = radial_integral(upper.state(Z), lower.state(Z), scheme)
    Q = np.empty((3, 3), dtype=complex)
    for a in "xyz":
        for b in "xyz":
            if AXES[b] < AXES[a]:
                continue
            Q[AXES[a], AXES[b]] = Q[AXES[b], AXES[a]] = np.conj(radial * angular_integral(upper, lower, a + b))
    # zero the quadrature noise floor so forbidden entries are exactly zero
    floor = NOISE_FLOOR * np.max(np.abs(Q))
    Q.real[np.abs(Q.real) < floor] = 0.0
    Q.imag[np.abs(Q.imag) < floor] = 0.0
    return QuadrupoleTensor(Q)


def modified_moments(tensor: QuadrupoleTensor, pol: Polarization) -> ModifiedMoments:
    q = tensor.Q
    contracted = pol.alpha * q[:, 0] + pol.beta * q[:, 1]
    return ModifiedMoments(*(complex(c) for c in contracted))

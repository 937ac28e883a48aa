"""Special functions: associated Laguerre polynomials, factorial ratios and
hydrogen-like radial wavefunctions.

Everything here accepts scalars or numpy arrays for the continuous argument.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LaguerreParams:
    """Indices of L_p^a: radial order ``p`` and superscript ``a``."""

    p: int
    a: int

    def __post_init__(self):
        if self.p < 0 or self.a < 0:
            raise ValueError(f"Laguerre indices must be non-negative, got p={self.p}, a={self.a}")


@dataclass(frozen=True)
class HydrogenicState:
    n: int
    L: int
    Z: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not 0 <= self.L <= self.n - 1:
            raise ValueError(f"need 0 <= L <= n-1, got n={self.n}, L={self.L}")
        if not self.Z > 0:
            raise ValueError(f"effective charge must be positive, got {self.Z}")

    @property
    def r_max(self) -> float:
        """Truncation radius (Bohr radii) for radial quadrature."""
        return 40.0 * self.n**2 / self.Z


def _laguerre(p: int, a: int, x):
    # ascending three-term recurrence in p
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if p == 0:
        return prev
    cur = 1.0 + a - x
    for k in range(1, p):
        prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
    return cur


def assoc_laguerre(params: LaguerreParams, x):
    """L_p^a(x) by upward recurrence. Returns a float for scalar input."""
    out = _laguerre(params.p, params.a, x)
    return float(out) if out.ndim == 0 else out


def assoc_laguerre_deriv(params: LaguerreParams, x):
    """dL_p^a/dx = -L_{p-1}^{a+1}(x); zero for p = 0."""
    if params.p == 0:
        out = np.zeros_like(np.asarray(x, dtype=float))
    else:
        out = -_laguerre(params.p - 1, params.a + 1, x)
    return float(out) if out.ndim == 0 else out


def log_factorial_ratio(p: int, ell_abs: int) -> float:
    """ln(p!) - ln((|l| + p)!)."""
    return math.lgamma(p + 1) - math.lgamma(ell_abs + p + 1)


def hydrogenic_radial(state: HydrogenicState, r):
    """Normalized R_nL(r; Z) in units of a0^(-3/2), r in Bohr radii.

    Normalization is int_0^inf R^2 r^2 dr = 1; the constant is built in log
    space so large n stays finite.
    """
    n, L, Z = state.n, state.L, state.Z
    r = np.asarray(r, dtype=float)
    rho = 2.0 * Z * r / n
    log_norm = 1.5 * math.log(2.0 * Z / n) + 0.5 * (
        math.lgamma(n - L) - math.log(2.0 * n) - math.lgamma(n + L + 1)
    )
    out = math.exp(log_norm) * rho**L * np.exp(-rho / 2.0) * _laguerre(n - L - 1, 2 * L + 1, rho)
    return float(out) if out.ndim == 0 else out

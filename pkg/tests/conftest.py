import math

import pytest

from vortexquad.beam import LGMode, Polarization

LAMBDA = 685e-9
INTENSITY = 4.0e5
GAMMA_S = 3.34e7


@pytest.fixture
def lg_mode():
    def make(ell=0, p=0, xi=5.0, intensity=INTENSITY, sigma_z=-1):
        return LGMode(LAMBDA, xi * LAMBDA, ell, p, intensity, Polarization.circular(sigma_z))
    return make


@pytest.fixture
def omega_a():
    return 2 * math.pi * 299_792_458.0 / LAMBDA

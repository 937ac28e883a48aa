"""Physical constants (CODATA 2018), pinned so output files are reproducible."""

C = 299_792_458.0  # m/s
EPS0 = 8.8541878128e-12  # F/m
HBAR = 1.054571817e-34  # J s
E_CHARGE = 1.602176634e-19  # C
A0 = 5.291772109e-11  # m

# one e*a0^2 in SI (C m^2)
EA0_SQ = E_CHARGE * A0**2

"""How the 6s -> 5d quadrupole moments depend on the screened charge.

Both states share one effective charge Z; the radial integral then scales as
1/Z^2, so the scan also reports the Z at which |Q_xx| would reach a target.

    python3 scripts/z_eff_scan.py [--target 10]
"""
import argparse

import numpy as np
from scipy.optimize import brentq

from vortexquad.atomic import CS_6S, Z_EFF_CS, cs_5d, quadrupole_tensor


def moments(z: float) -> tuple[float, float]:
    q_xx = abs(quadrupole_tensor(CS_6S, cs_5d(0), z)["xx"])
    q_xz = abs(quadrupole_tensor(CS_6S, cs_5d(1), z)["xz"])
    return q_xx, q_xz


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--target", type=float, default=10.0, help="|Q_xx| in e a0^2 to solve for")
    args = parser.parse_args(argv)

    print(f"{'Z':>6} {'|Q_xx|':>10} {'|Q_xz|':>10}")
    for z in np.concatenate([np.linspace(1.5, 10, 18), [Z_EFF_CS]]):
        q_xx, q_xz = moments(float(z))
        print(f"{z:>6.2f} {q_xx:>10.4f} {q_xz:>10.4f}")
    z_star = brentq(lambda z: moments(z)[0] - args.target, 1.0, 10.0, xtol=1e-6)
    print(f"|Q_xx| = {args.target} at Z = {z_star:.4f}")


if __name__ == "__main__":
    main()

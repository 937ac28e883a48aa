"""Peak resonant absorption rate per open channel for both circular
polarizations, under one set of beam parameters.

    python3 scripts/channel_comparison.py [--waist-over-lambda 5] [--q 10]
"""
import argparse
import math

import numpy as np

from vortexquad.absorption import rate_profile
from vortexquad.atomic import TransitionLine
from vortexquad.beam import Polarization
from vortexquad.coupling import allowed_channels, mode_for_channel, scaling_factors
from vortexquad.oracle import peak_scan


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--wavelength-nm", type=float, default=685.0)
    parser.add_argument("--waist-over-lambda", type=float, default=5.0)
    parser.add_argument("--intensity", type=float, default=4.0e5)
    parser.add_argument("--gamma", type=float, default=3.34e7)
    parser.add_argument("--q", type=float, default=10.0)
    parser.add_argument("--p", type=int, default=0)
    args = parser.parse_args(argv)

    wavelength = args.wavelength_nm * 1e-9
    line = TransitionLine(2 * math.pi * 299_792_458.0 / wavelength, args.gamma)
    channels = allowed_channels(line, [Polarization.circular(-1), Polarization.circular(1)])
    rows = []
    for ch in channels:
        mode = mode_for_channel(ch, wavelength, args.waist_over_lambda * wavelength, args.intensity, args.p)
        scaling = scaling_factors(mode, args.q, args.q)

        def rate(r, mode=mode, scaling=scaling, ch=ch):
            r = np.atleast_1d(r)
            out = np.array([x.rate_over_gamma for x in rate_profile(mode, ch, line, scaling, r)])
            return out if out.size > 1 else out[0]

        peak = peak_scan(rate, 1e-6, 4.0)
        rows.append((ch, peak))
    best = max(peak.value for _, peak in rows)
    print(f"{'dm':>3} {'l':>3} {'sz':>3} {'kind':>15} {'rho/w0':>8} {'rate/Gamma_S':>13} {'rel':>9}")
    for ch, peak in rows:
        flag = "*" if peak.at_endpoint else " "
        print(f"{ch.delta_m:>+3d} {ch.ell:>+3d} {ch.sigma_z:>+3d} {ch.kind.value:>15} "
              f"{peak.rho:>7.4f}{flag} {peak.value:>13.5g} {peak.value / best:>9.3g}")
    print("* maximum on the beam axis")


if __name__ == "__main__":
    main()

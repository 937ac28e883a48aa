"""Write the Rabi and rate radial profiles for the three sigma_z = -1 channels
at w0 = 5 and 8 wavelengths, and print their peaks.

    python3 scripts/profiles.py --out-dir profiles/ [--q 10]
"""
import argparse
import dataclasses
from pathlib import Path

import numpy as np

from vortexquad.cli import cmd_rabi, cmd_rate
from vortexquad.config import RunConfig

CASES = [
    # (delta_m, ell, p)
    (0, 1, 0),
    (0, 1, 1),
    (1, 2, 0),
    (2, 3, 0),
]


def peak_of(csv_text: str, column: int) -> tuple[float, float]:
    body = [line for line in csv_text.splitlines() if not line.startswith("#")][1:]
    data = np.array([[float(v) for v in line.split(",")[: column + 1]] for line in body])
    i = int(np.argmax(data[:, column]))
    return data[i, 0], data[i, column]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", type=Path, default=Path("profiles"))
    parser.add_argument("--q", type=float, default=10.0, help="|Q_xx| = |Q_xz| in e a0^2")
    parser.add_argument("--samples", type=int, default=1000)
    args = parser.parse_args(argv)
    args.out_dir.mkdir(parents=True, exist_ok=True)

    print(f"{'kind':>4} {'dm':>3} {'l':>3} {'p':>2} {'w0/lam':>6} {'peak rho/lam':>12} {'peak value':>12}")
    for dm, ell, p in CASES:
        for xi in (5.0, 8.0):
            cfg = dataclasses.replace(RunConfig(), delta_m=dm, ell=ell, p=p, waist_over_lambda=xi,
                                      q_xx_ea02=args.q, q_xz_ea02=args.q, samples=args.samples).validate()
            stem = f"dm{dm:+d}_l{ell}_p{p}_w{int(xi)}"
            for kind, cmd in (("rabi", cmd_rabi), ("rate", cmd_rate)):
                text = cmd(cfg)
                (args.out_dir / f"{kind}_{stem}.csv").write_text(text)
                x, y = peak_of(text, 1)
                print(f"{kind:>4} {dm:>+3d} {ell:>3d} {p:>2d} {xi:>6.0f} {x:>12.5f} {y:>12.6g}")


if __name__ == "__main__":
    main()

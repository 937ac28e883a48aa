"""Command-line front end.

    vortexquad matrix-elements | rabi | rate | channels | validate [flags]

Exit codes: 0 success, 2 configuration or selection-rule rejection,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np

from . import atomic
from .absorption import Detuning, rate_profile
from .beam import Polarization
from .config import COMPUTE, ConfigError, RunConfig, load_config
from .constants import C
from .coupling import (
    Channel,
    SelectionRuleError,
    allowed_channels,
    check_channel,
    mode_for_channel,
    rabi_profile,
    scaling_factors,
)
from .oracle import SuiteSettings, run_suite
from .quadrature import QuadratureError

EXIT_CONFIG = 2
EXIT_NUMERIC = 3
RHO_BAR_START = 1e-6


def fmt(x) -> str:
    return "%.9g" % x


# --- shared helpers ---------------------------------------------------------

def transition_line(cfg: RunConfig, upper_m: int = 0) -> atomic.TransitionLine:
    return atomic.TransitionLine(2 * math.pi * C / cfg.wavelength, cfg.gamma_s_per_s,
                                 upper=atomic.cs_5d(upper_m))


def moment_magnitudes(cfg: RunConfig) -> tuple[float, float]:
    """|Q_xx| and |Q_xz| in e*a0^2, from the config or from quadrature."""
    q_xx, q_xz = cfg.q_xx_ea02, cfg.q_xz_ea02
    if q_xx == COMPUTE:
        q_xx = abs(atomic.quadrupole_tensor(atomic.CS_6S, atomic.cs_5d(0), cfg.z_eff)["xx"])
    if q_xz == COMPUTE:
        q_xz = abs(atomic.quadrupole_tensor(atomic.CS_6S, atomic.cs_5d(1), cfg.z_eff)["xz"])
    return float(q_xx), float(q_xz)


def configured_channel(cfg: RunConfig) -> Channel:
    channel = Channel(cfg.delta_m, cfg.ell, cfg.sigma_z)
    check_channel(transition_line(cfg), channel)
    return channel


def rho_grid(cfg: RunConfig) -> np.ndarray:
    return np.linspace(RHO_BAR_START, cfg.rho_max_over_waist, cfg.samples)


def header_lines(cfg: RunConfig, derived: dict) -> list[str]:
    lines = [f"# {name}={value}" for name, value in cfg.items()]
    lines += [f"# derived.{name}={fmt(value) if isinstance(value, float) else value}" for name, value in derived.items()]
    return lines


def render(cfg: RunConfig, derived: dict, columns: list[str], rows: list[list], out_format: str) -> str:
    if out_format == "json":
        payload = {"config": dict(cfg.items()), "derived": derived, "columns": columns, "rows": rows}
        return json.dumps(payload, indent=1) + "\n"
    buf = io.StringIO()
    for line in header_lines(cfg, derived):
        buf.write(line + "\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) if isinstance(v, (float, np.floating)) else str(v) for v in row) + "\n")
    return buf.getvalue()


# --- subcommands ------------------------------------------------------------

def _setup(cfg: RunConfig):
    channel = configured_channel(cfg)
    q_xx, q_xz = moment_magnitudes(cfg)
    mode = mode_for_channel(channel, cfg.wavelength, cfg.waist, cfg.intensity_W_per_m2, cfg.p)
    scaling = scaling_factors(mode, q_xx, q_xz)
    derived = {"q_xx_used_ea02": q_xx, "q_xz_used_ea02": q_xz, "omega_0_per_s": scaling.omega_0,
               "omega_0_over_gamma": scaling.omega_0 / cfg.gamma_s_per_s, "kind": channel.kind.value}
    return channel, mode, scaling, derived


def cmd_rabi(cfg: RunConfig, out_format: str = "csv") -> str:
    channel, mode, scaling, derived = _setup(cfg)
    grid = rho_grid(cfg)
    ratio = rabi_profile(mode, scaling, channel.delta_m, grid, cfg.conv) / scaling.omega_0
    x = grid * cfg.waist_over_lambda
    rows = [[float(a), float(abs(b)), float(b.real), float(b.imag)] for a, b in zip(x, ratio)]
    columns = ["rho_over_wavelength", "omega_over_omega0", "re_omega_over_omega0", "im_omega_over_omega0"]
    return render(cfg, derived, columns, rows, out_format)


def cmd_rate(cfg: RunConfig, out_format: str = "csv") -> str:
    channel, mode, scaling, derived = _setup(cfg)
    line = transition_line(cfg, channel.delta_m)
    results = rate_profile(mode, channel, line, scaling, rho_grid(cfg),
                           Detuning(cfg.detuning_over_gamma), cfg.conv)
    rows = [[r.rho_bar * cfg.waist_over_lambda, r.rate_over_gamma, r.validity.value] for r in results]
    derived["all_golden_rule_ok"] = all(r.validity.value == "GoldenRuleOk" for r in results)
    return render(cfg, derived, ["rho_over_wavelength", "rate_over_gammaS", "validity_flag"], rows, out_format)


def cmd_channels(cfg: RunConfig, out_format: str = "csv") -> str:
    pol = Polarization.circular(cfg.sigma_z)
    channels = allowed_channels(transition_line(cfg), [pol])
    rows = []
    for ch in channels:
        gate = "none" if ch.delta_m == 0 else ("alpha+i*beta" if ch.delta_m > 0 else "alpha-i*beta")
        rows.append([ch.delta_m, ch.ell, ch.sigma_z, ch.kind.value, gate, "yes" if ch.dominant else "no"])
    columns = ["delta_m", "ell", "sigma_z", "kind", "gating_factor", "dominant"]
    return render(cfg, {"multipolarity_L": 2}, columns, rows, out_format)


MATRIX_COMPONENTS = ("xx", "xy", "yy", "zx", "zy")


def cmd_matrix_elements(cfg: RunConfig, out_format: str = "csv") -> str:
    pol = Polarization.circular(cfg.sigma_z)
    rows = []
    for dm in (0, 1, -1, 2, -2):
        tensor = atomic.quadrupole_tensor(atomic.CS_6S, atomic.cs_5d(dm), cfg.z_eff)
        moments = atomic.modified_moments(tensor, pol)
        gating = 1.0 if dm == 0 else abs(pol.gating(1 if dm > 0 else -1))
        values = [tensor[c] for c in MATRIX_COMPONENTS] + [moments.Q1, moments.Q2, moments.Q3]
        if out_format == "json":
            rows.append([dm] + [[v.real, v.imag] for v in values] + [gating])
        else:
            rows.append([dm] + [float(abs(v)) for v in values] + [float(gating)])
    columns = ["delta_m"] + [f"Q_{c}" for c in MATRIX_COMPONENTS] + ["mQ1", "mQ2", "mQ3", "gating"]
    state = atomic.CS_6S.state(cfg.z_eff)
    radial = atomic.radial_integral(atomic.cs_5d(0).state(cfg.z_eff), state)
    return render(cfg, {"units": "e*a0^2", "radial_integral_a02": radial}, columns, rows, out_format)


def cmd_validate(cfg: RunConfig) -> tuple[str, bool]:
    q_xx, q_xz = moment_magnitudes(cfg)
    settings = SuiteSettings(wavelength=cfg.wavelength, waist_over_lambda=cfg.waist_over_lambda,
                             intensity=cfg.intensity_W_per_m2, p_values=tuple(sorted({0, 1, cfg.p})),
                             q_xx=q_xx, q_xz=q_xz, z_eff=cfg.z_eff, convention=cfg.conv)
    reports = run_suite(settings)
    return "".join(r.to_json() + "\n" for r in reports), all(r.passed for r in reports)


# --- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value configuration file")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    for f in fields(RunConfig):
        common.add_argument("--" + f.name.replace("_", "-"), dest=f.name, default=None, metavar="VALUE")

    parser = argparse.ArgumentParser(prog="vortexquad", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("matrix-elements", "quadrupole matrix elements and modified moments per dm case"),
        ("rabi", "radial profile of the Rabi frequency, Omega/Omega_0 vs rho/lambda"),
        ("rate", "radial profile of the absorption rate, Gamma_if/Gamma_S vs rho/lambda"),
        ("channels", "channels allowed by the selection rules"),
        ("validate", "run the oracle suite; JSON lines, non-zero exit on failure"),
    ):
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, newline="\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {f.name: getattr(args, f.name) for f in fields(RunConfig)}
    try:
        cfg = load_config(args.config, overrides)
        if args.command == "validate":
            text, ok = cmd_validate(cfg)
            _emit(text, args.out)
            return 0 if ok else 1
        handler = {"matrix-elements": cmd_matrix_elements, "rabi": cmd_rabi,
                   "rate": cmd_rate, "channels": cmd_channels}[args.command]
        _emit(handler(cfg, args.format), args.out)
    except (ConfigError, SelectionRuleError) as exc:
        print(f"vortexquad: rejected: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, FloatingPointError) as exc:
        print(f"vortexquad: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return 0


if __name__ == "__main__":
    sys.exit(main())

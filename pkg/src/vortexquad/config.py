"""Run configuration: defaults, flat key=value files, and validation.

Precedence is command-line flag > config file > default.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path

from .coupling import Convention


class ConfigError(ValueError):
    pass


COMPUTE = "compute"


@dataclass(frozen=True)
class RunConfig:
    wavelength_nm: float = 685.0
    intensity_W_per_m2: float = 4.0e5
    gamma_s_per_s: float = 3.34e7
    q_xx_ea02: str | float = COMPUTE
    q_xz_ea02: str | float = COMPUTE
    z_eff: float = 8.56
    waist_over_lambda: float = 5.0
    ell: int = 2
    p: int = 0
    delta_m: int = 1
    sigma_z: int = -1
    detuning_over_gamma: float = 0.0
    rho_max_over_waist: float = 4.0
    samples: int = 1000
    convention: str = Convention.RABI_FORM.value

    @property
    def wavelength(self) -> float:
        return self.wavelength_nm * 1e-9

    @property
    def waist(self) -> float:
        return self.waist_over_lambda * self.wavelength

    @property
    def conv(self) -> Convention:
        return Convention(self.convention)

    def items(self):
        return [(f.name, getattr(self, f.name)) for f in fields(self)]

    def validate(self) -> "RunConfig":
        for name in ("wavelength_nm", "intensity_W_per_m2", "gamma_s_per_s", "z_eff",
                     "waist_over_lambda", "rho_max_over_waist"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be strictly positive, got {getattr(self, name)}")
        for name in ("q_xx_ea02", "q_xz_ea02"):
            value = getattr(self, name)
            if value != COMPUTE and not value > 0:
                raise ConfigError(f"{name} must be '{COMPUTE}' or a positive number, got {value}")
        if self.samples < 2:
            raise ConfigError(f"samples must be at least 2, got {self.samples}")
        if self.p < 0:
            raise ConfigError(f"p must be non-negative, got {self.p}")
        if self.sigma_z not in (-1, 1):
            raise ConfigError(
                f"sigma_z={self.sigma_z}: only circular polarization (sigma_z = +1 or -1) is in scope")
        return self


def _field_types():
    return {f.name: f.type for f in fields(RunConfig)}


def _normalize_key(key: str) -> str:
    key = key.strip().replace("-", "_")
    known = {name.lower(): name for name in _field_types()}
    if key.lower() not in known:
        raise ConfigError(f"unknown configuration key {key!r}")
    return known[key.lower()]


def coerce(name: str, raw) -> object:
    """Convert a raw string (or value) to the type of field ``name``."""
    kind = _field_types()[name]
    if not isinstance(raw, str):
        return raw
    text = raw.strip()
    try:
        if kind == "int":
            return int(text)
        if kind == "float":
            return float(text)
        if kind == "str | float":
            return COMPUTE if text.lower() == COMPUTE else float(text)
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc
    if name == "convention":
        try:
            return Convention(text).value
        except ValueError as exc:
            choices = ", ".join(c.value for c in Convention)
            raise ConfigError(f"convention must be one of {choices}, got {text!r}") from exc
    return text


def parse_config_text(text: str) -> dict:
    """Flat ``key = value`` lines; '#' starts a comment."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        name = _normalize_key(key)
        values[name] = coerce(name, value)
    return values


def load_config(path: str | Path | None = None, overrides: dict | None = None) -> RunConfig:
    values = {}
    if path is not None:
        values.update(parse_config_text(Path(path).read_text()))
    for key, value in (overrides or {}).items():
        if value is not None:
            name = _normalize_key(key)
            values[name] = coerce(name, value)
    return dataclasses.replace(RunConfig(), **values).validate()

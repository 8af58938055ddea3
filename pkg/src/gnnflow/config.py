"""Run configuration: defaults, INI-style config files, and overrides.

The file format is two sections, tile and hardware, whose keys are the
model's parameter names. One hardware section describes both accelerators
(the key sets are disjoint) so a single file also drives compare runs:

    [tile]
    K = 1000
    N = 30

    [hardware]
    B = 1000
    M = 16
    Mprime = 16
    gamma = 0.25

Precedence is command-line overrides > file values > built-in defaults.
K defaults to 1000; unset P resolves to 10*K and unset L to round(0.1*K).
"""

from __future__ import annotations

import configparser
import io
from dataclasses import dataclass

from .analysis import round_half_up
from .core import CommonHwParams, EngnConfig, HygcnConfig, TileParams

TILE_KEYS = ("K", "L", "P", "N", "T")
HARDWARE_KEYS = (
    "sigma", "B",
    "M", "Mprime", "Bstar",
    "Ma", "Mc", "gamma", "Ps",
    "simd_width", "mc_cap_in_elements",
)

_FLOAT_KEYS = {"gamma"}
_BOOL_KEYS = {"mc_cap_in_elements"}

DEFAULTS: dict[str, int | float | bool | None] = {
    "K": 1000,
    "L": None,          # resolves to round(0.1*K)
    "P": None,          # resolves to 10*K
    "N": 30,
    "T": 5,
    "sigma": 4,
    "B": 1000,
    "M": 128,
    "Mprime": 16,
    "Bstar": None,      # tracks B
    "Ma": 32,
    "Mc": 4096,
    "gamma": 0.0,
    "Ps": None,         # tracks P
    "simd_width": 8,
    "mc_cap_in_elements": False,
}

ACCELERATORS = ("engn", "hygcn")


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved parameters for one CLI invocation."""

    accelerator: str | None
    tile: TileParams
    engn: EngnConfig
    hygcn: HygcnConfig

    @property
    def hardware(self) -> EngnConfig | HygcnConfig:
        if self.accelerator == "engn":
            return self.engn
        if self.accelerator == "hygcn":
            return self.hygcn
        raise ValueError("no accelerator selected; pass --accel engn or --accel hygcn")


def _parse_value(key: str, raw: str, where: str):
    raw = raw.strip()
    try:
        if key in _BOOL_KEYS:
            lowered = raw.lower()
            if lowered in ("true", "1", "yes", "on"):
                return True
            if lowered in ("false", "0", "no", "off"):
                return False
            raise ValueError(f"expected a boolean, got {raw!r}")
        if key in _FLOAT_KEYS:
            return float(raw)
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{where}: invalid value for {key}: {exc}") from exc


def _read_file(path: str) -> dict[str, int | float | bool]:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keep parameter-name case
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle, source=path)
    except OSError as exc:
        raise ValueError(f"cannot read config file {path}: {exc.strerror}") from exc
    except configparser.Error as exc:
        raise ValueError(f"config parse error: {exc}") from exc

    allowed = {"tile": TILE_KEYS, "hardware": HARDWARE_KEYS}
    values: dict[str, int | float | bool] = {}
    for section in parser.sections():
        if section not in allowed:
            raise ValueError(
                f"{path}: unknown section [{section}] (expected [tile] or [hardware])"
            )
        for key, raw in parser.items(section):
            matches = [name for name in allowed[section] if name.lower() == key.lower()]
            if not matches:
                raise ValueError(f"{path}: unknown key {key!r} in [{section}]")
            canonical = matches[0]
            if canonical in values:
                raise ValueError(f"{path}: duplicate key {canonical!r} in [{section}]")
            values[canonical] = _parse_value(canonical, raw, f"{path} [{section}]")
    return values


def parse_overrides(pairs: list[str]) -> dict[str, int | float | bool]:
    """Parse --set KEY=VALUE pairs; keys are tile or hardware parameter names."""
    known = TILE_KEYS + HARDWARE_KEYS
    out: dict[str, int | float | bool] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"override must look like KEY=VALUE, got {pair!r}")
        key, raw = pair.split("=", 1)
        key = key.strip()
        if key not in known:
            raise ValueError(f"unknown parameter {key!r} in override {pair!r}")
        out[key] = _parse_value(key, raw, f"override {pair!r}")
    return out


def load_config(
    path: str | None = None,
    overrides: dict[str, int | float | bool] | None = None,
    accelerator: str | None = None,
) -> RunConfig:
    """Resolve defaults, optional config file, and overrides into a RunConfig."""
    if accelerator is not None and accelerator not in ACCELERATORS:
        raise ValueError(f"unknown accelerator {accelerator!r} (expected engn or hygcn)")

    params = dict(DEFAULTS)
    if path is not None:
        params.update(_read_file(path))
    if overrides:
        params.update(overrides)

    if params["P"] is None:
        params["P"] = 10 * params["K"]
    if params["L"] is None:
        params["L"] = round_half_up(0.1 * params["K"])

    tile = TileParams(K=params["K"], L=params["L"], P=params["P"],
                      N=params["N"], T=params["T"])
    common = CommonHwParams(sigma=params["sigma"], B=params["B"])
    engn = EngnConfig(common=common, M=params["M"], Mprime=params["Mprime"],
                      Bstar=params["Bstar"])
    hygcn = HygcnConfig(
        common=common,
        Ma=params["Ma"],
        Mc=params["Mc"],
        gamma=params["gamma"],
        Ps=params["Ps"],
        simd_width=params["simd_width"],
        mc_cap_in_elements=params["mc_cap_in_elements"],
    )
    return RunConfig(accelerator=accelerator, tile=tile, engn=engn, hygcn=hygcn)


def emit_config(config: RunConfig) -> str:
    """Config file text that load_config reads back to the same RunConfig."""
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keep parameter-name case
    parser["tile"] = {
        "K": str(config.tile.K),
        "L": str(config.tile.L),
        "P": str(config.tile.P),
        "N": str(config.tile.N),
        "T": str(config.tile.T),
    }
    hardware = {
        "sigma": str(config.engn.common.sigma),
        "B": str(config.engn.common.B),
        "M": str(config.engn.M),
        "Mprime": str(config.engn.Mprime),
        "Ma": str(config.hygcn.Ma),
        "Mc": str(config.hygcn.Mc),
        "gamma": repr(config.hygcn.gamma),
        "simd_width": str(config.hygcn.simd_width),
        "mc_cap_in_elements": "true" if config.hygcn.mc_cap_in_elements else "false",
    }
    if config.engn.Bstar is not None:
        hardware["Bstar"] = str(config.engn.Bstar)
    if config.hygcn.Ps is not None:
        hardware["Ps"] = str(config.hygcn.Ps)
    parser["hardware"] = hardware

    buffer = io.StringIO()
    parser.write(buffer)
    return buffer.getvalue()

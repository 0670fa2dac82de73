"""Scan configuration: flat ``key = value`` files plus command-line overrides."""
from __future__ import annotations

from dataclasses import dataclass, field, fields
import math
import os

from .interferometer import PHASE_MODES
from .magnetic_region import RAMP_SHAPES, FieldProfile, NeutronKinematics
from .spinor import Spinor

SCAN_KINDS = ("alpha", "field", "thickness", "detuning", "oracle")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class FixedParams:
    tau: float = math.pi / 4
    y: float = 0.0
    omega: float = 0.0
    mu: float = -1.0
    a: float = 1.0
    l: float = 0.0
    ramp_shape: str = "smoothstep"
    energy: float = 5.0e5
    mass: float = 1.0
    hbar: float = 1.0
    mode: str = "weak"
    spin_up_prob: float = 1.0
    spin_sign: int = 1
    count_rate: float = 1.0

    def kinematics(self, energy: float | None = None) -> NeutronKinematics:
        return NeutronKinematics(self.energy if energy is None else energy, self.mass, self.hbar)

    def profile(self, omega: float | None = None) -> FieldProfile:
        return FieldProfile(self.omega if omega is None else omega, self.a, self.l, self.ramp_shape)

    def spinor(self) -> Spinor:
        return Spinor.from_up_probability(self.spin_up_prob)


# keys that are not physics parameters
_RANGE_KEYS = {"points": int, "from": float, "to": float, "out": str, "svg": str}
_PARAM_TYPES = {f.name: f.type for f in fields(FixedParams)}
_TYPES = {**{k: {"float": float, "int": int, "str": str}[v] for k, v in _PARAM_TYPES.items()}, **_RANGE_KEYS}
KNOWN_KEYS = tuple(_TYPES)


@dataclass(frozen=True)
class ScanConfig:
    scan_kind: str
    start: float
    stop: float
    n_points: int
    fixed: FixedParams = field(default_factory=FixedParams)
    output_path: str | None = None
    svg_path: str | None = None


def _convert(key, raw, where):
    typ = _TYPES[key]
    try:
        if typ is int:
            value = int(raw)
        elif typ is float:
            value = float(raw)
            if not math.isfinite(value):
                raise ValueError
        else:
            value = str(raw).strip()
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: key '{key}': cannot parse {raw!r} as {typ.__name__}") from None
    return value


def _normalise_key(key: str) -> str:
    return key.strip().replace("-", "_")


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    if not os.path.isfile(path):
        raise ConfigError(f"config file not found: {path}")
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {text!r}")
            key, raw = text.split("=", 1)
            key = _normalise_key(key)
            if key not in _TYPES:
                raise ConfigError(f"{path}:{lineno}: unknown key '{key}'")
            values[key] = _convert(key, raw.strip(), f"{path}:{lineno}")
    return values


def default_range(kind: str, fixed: FixedParams) -> tuple[float, float, int]:
    if kind == "alpha":
        return 0.0, 8.0 * math.pi, 101
    if kind == "field":
        # field strength at which the weak-field angle reaches 8 pi
        kin = fixed.kinematics()
        omega = 8.0 * math.pi * kin.v / fixed.profile(omega=1.0).field_length
        return 0.0, -omega / fixed.mu, 101
    if kind == "thickness":
        return 0.0, 2.0, 101
    if kind == "detuning":
        return -5.0, 5.0, 101
    return 1.0, 100.0, 20


def _validate(fixed: FixedParams):
    checks = [
        (fixed.a > 0, "a must be positive"),
        (fixed.l >= 0, "l must be >= 0"),
        (fixed.energy > 0, "energy must be positive"),
        (fixed.mass > 0, "mass must be positive"),
        (fixed.hbar > 0, "hbar must be positive"),
        (fixed.mu != 0, "mu must be non-zero"),
        (0.0 <= fixed.spin_up_prob <= 1.0, "spin_up_prob must lie in [0, 1]"),
        (fixed.spin_sign in (1, -1), "spin_sign must be +1 or -1"),
        (fixed.count_rate >= 0, "count_rate must be >= 0"),
        (fixed.mode in PHASE_MODES, f"mode must be one of {', '.join(PHASE_MODES)}"),
        (fixed.ramp_shape in RAMP_SHAPES, f"ramp_shape must be one of {', '.join(sorted(RAMP_SHAPES))}"),
    ]
    for ok, message in checks:
        if not ok:
            raise ConfigError(message)


def parse_config(kind: str, path=None, overrides: dict | None = None) -> ScanConfig:
    """Build a ScanConfig; flag ``overrides`` (raw strings or values) win over the file."""
    if kind not in SCAN_KINDS:
        raise ConfigError(f"unknown scan kind {kind!r}")
    values = read_config_file(path) if path else {}
    for key, raw in (overrides or {}).items():
        if raw is None:
            continue
        key = _normalise_key(key)
        if key not in _TYPES:
            raise ConfigError(f"unknown key '{key}'")
        values[key] = _convert(key, raw, "command line")
    fixed = FixedParams(**{k: v for k, v in values.items() if k in _PARAM_TYPES})
    _validate(fixed)
    start, stop, n = default_range(kind, fixed)
    start = values.get("from", start)
    stop = values.get("to", stop)
    n = values.get("points", n)
    if n < 2:
        raise ConfigError(f"points must be >= 2, got {n}")
    if not start < stop:
        raise ConfigError(f"range start must be below stop (from={start}, to={stop})")
    return ScanConfig(kind, start, stop, n, fixed, values.get("out"), values.get("svg"))

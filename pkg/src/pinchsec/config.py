"""Scenario parameters, unit conversions, and validation.

Every other module consumes a validated :class:`SystemConfig`.  All lengths
are meters, frequencies Hz; decoding thresholds and the transmit-SNR axis are
configured in dB and linearized internally.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace


class ConfigError(ValueError):
    """Raised when a config cannot be parsed or fails validation."""


def db_to_linear(value_db: float) -> float:
    """10^(value_db/10). Rejects non-finite input."""
    if not math.isfinite(value_db):
        raise ValueError(f"non-finite dB value: {value_db!r}")
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    """Inverse of :func:`db_to_linear` for positive ratios."""
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"dB conversion needs a positive finite ratio, got {value!r}")
    return 10.0 * math.log10(value)


@dataclass(frozen=True)
class PhysicalConstants:
    carrier_frequency_hz: float = 28e9
    light_speed_m_s: float = 3e8
    effective_refractive_index: float = 1.4
    coupling_coefficient_per_m: float = 100.0   # kappa
    coupling_efficiency: float = 1.0            # F in (0, 1]

    @property
    def wavelength_m(self) -> float:
        return self.light_speed_m_s / self.carrier_frequency_hz

    @property
    def guide_wavelength_m(self) -> float:
        return self.wavelength_m / self.effective_refractive_index

    @property
    def max_coupling_length_m(self) -> float:
        """Upper bound pi/(2 kappa) on a single coupling length."""
        return math.pi / (2.0 * self.coupling_coefficient_per_m)


@dataclass(frozen=True)
class Geometry:
    waveguide_height_m: float = 3.0       # d
    cell1_center_offset_m: float = 10.0   # D1, cell C1 centered at (-D1, 0, 0)
    cell2_center_offset_m: float = 10.0   # D2, cell C2 centered at (+D2, 0, 0)
    cell_side_m: float = 10.0             # D, common square side


@dataclass(frozen=True)
class NomaAllocation:
    alpha1: float = 0.99
    alpha2: float = 0.01


@dataclass(frozen=True)
class LinkBudget:
    rho_t_db: float = 20.0
    # The transmit-SNR axis as plotted is offset from the linear SNR actually
    # entering the channel math; 90 dB reproduces the published operating
    # points.  Set to 0 for the raw convention.
    noise_floor_offset_db: float = 90.0
    gamma1_db: float = 10.0
    gamma2_db: float = 15.0

    @property
    def rho_t_linear(self) -> float:
        return db_to_linear(self.rho_t_db + self.noise_floor_offset_db)

    @property
    def gamma1_linear(self) -> float:
        return db_to_linear(self.gamma1_db)

    @property
    def gamma2_linear(self) -> float:
        return db_to_linear(self.gamma2_db)


def free_space_factor(constants: PhysicalConstants) -> float:
    """Free-space channel factor (c/f_c)^2 / (16 pi^2), in m^2."""
    lam = constants.wavelength_m
    return lam * lam / (16.0 * math.pi ** 2)


@dataclass(frozen=True)
class SystemConfig:
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    geometry: Geometry = field(default_factory=Geometry)
    allocation: NomaAllocation = field(default_factory=NomaAllocation)
    link: LinkBudget = field(default_factory=LinkBudget)

    @property
    def eta(self) -> float:
        return free_space_factor(self.constants)

    def validated(self) -> "SystemConfig":
        """Return self if no validation *errors*; warnings are tolerated."""
        errors = [i for i in validate(self) if i.severity == "error"]
        if errors:
            raise ConfigError("; ".join(f"{i.code}: {i.message}" for i in errors))
        return self


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str
    severity: str  # "error" | "warning"


def validate(config: SystemConfig) -> list[ValidationIssue]:
    """Check every invariant and report all violations, not just the first."""
    out: list[ValidationIssue] = []
    c, g, a, l = config.constants, config.geometry, config.allocation, config.link

    def err(code, msg):
        out.append(ValidationIssue(code, msg, "error"))

    def warn(code, msg):
        out.append(ValidationIssue(code, msg, "warning"))

    if not c.carrier_frequency_hz > 0:
        err("carrier-frequency-nonpositive", f"carrier_frequency_hz = {c.carrier_frequency_hz}")
    if not c.light_speed_m_s > 0:
        err("light-speed-nonpositive", f"light_speed_m_s = {c.light_speed_m_s}")
    if not c.effective_refractive_index >= 1:
        err("refractive-index-below-one", f"effective_refractive_index = {c.effective_refractive_index}")
    if not c.coupling_coefficient_per_m > 0:
        err("coupling-coefficient-nonpositive", f"coupling_coefficient_per_m = {c.coupling_coefficient_per_m}")
    if not (0 < c.coupling_efficiency <= 1):
        err("coupling-efficiency-out-of-range", f"coupling_efficiency = {c.coupling_efficiency} not in (0, 1]")

    for name, v in (("waveguide_height_m", g.waveguide_height_m),
                    ("cell1_center_offset_m", g.cell1_center_offset_m),
                    ("cell2_center_offset_m", g.cell2_center_offset_m),
                    ("cell_side_m", g.cell_side_m)):
        if not v > 0:
            err(f"{name.replace('_', '-')}-nonpositive", f"{name} = {v}")
    if g.cell_side_m >= g.cell1_center_offset_m + g.cell2_center_offset_m:
        err("overlapping-cells",
            f"cell_side_m = {g.cell_side_m} >= D1 + D2 = "
            f"{g.cell1_center_offset_m + g.cell2_center_offset_m}")

    for name, v in (("alpha1", a.alpha1), ("alpha2", a.alpha2)):
        if not (0 < v < 1):
            err(f"{name}-out-of-range", f"{name} = {v} not in (0, 1)")
    if abs(a.alpha1 + a.alpha2 - 1.0) > 1e-12:
        err("alpha-sum", f"alpha1 + alpha2 = {a.alpha1 + a.alpha2} != 1")
    if a.alpha1 <= a.alpha2:
        warn("alpha-order", f"alpha1 = {a.alpha1} <= alpha2 = {a.alpha2}; "
             "the public user gets less power than the confidential user")

    gamma_ok = True
    for name, v in (("gamma1_db", l.gamma1_db), ("gamma2_db", l.gamma2_db),
                    ("rho_t_db", l.rho_t_db), ("noise_floor_offset_db", l.noise_floor_offset_db)):
        if not math.isfinite(v):
            err(f"{name.replace('_', '-')}-not-finite", f"{name} = {v}")
            gamma_ok = False

    if gamma_ok and a.alpha2 > 0 and a.alpha1 / a.alpha2 <= l.gamma1_linear:
        warn("alpha-ratio-not-above-gamma1",
             f"alpha1/alpha2 = {a.alpha1 / a.alpha2:.6g} <= gamma1 = "
             f"{l.gamma1_linear:.6g} linear; secrecy outage is certain")

    eta = free_space_factor(c) if c.carrier_frequency_hz > 0 and c.light_speed_m_s > 0 else float("nan")
    if not (math.isfinite(eta) and eta > 0):
        err("free-space-factor-invalid", f"eta = {eta}")
    return out


# ---------------------------------------------------------------------------
# Config file: flat dotted keys, one `key = value` per line, `#` comments.
# Every key optional; defaults above apply.
# ---------------------------------------------------------------------------

_SECTIONS = {
    "constants": PhysicalConstants,
    "geometry": Geometry,
    "allocation": NomaAllocation,
    "link": LinkBudget,
}

KNOWN_KEYS = tuple(
    f"{sec}.{f.name}" for sec, cls in _SECTIONS.items() for f in fields(cls)
)


def apply_overrides(config: SystemConfig, overrides: dict[str, float]) -> SystemConfig:
    """Return a copy of `config` with dotted-key overrides applied."""
    staged: dict[str, dict[str, float]] = {}
    for key, value in overrides.items():
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        sec, name = key.split(".", 1)
        staged.setdefault(sec, {})[name] = float(value)
    parts = {sec: replace(getattr(config, sec), **kv) for sec, kv in staged.items()}
    return replace(config, **parts)


def parse_config_text(text: str, base: SystemConfig | None = None) -> SystemConfig:
    overrides: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        try:
            overrides[key] = float(value.strip())
        except ValueError:
            raise ConfigError(f"line {lineno}: non-numeric value for {key!r}: {value.strip()!r}")
    return apply_overrides(base or SystemConfig(), overrides)


def load_config(path: str, base: SystemConfig | None = None) -> SystemConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read(), base=base)

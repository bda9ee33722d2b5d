"""Scenario configuration: parsing, validation, defaults, scene files.

Config files are flat ``key = value`` text with dotted namespaces::

    # transmit side
    link.tx_power_dbm = 46
    ris.elements = 128
    noma.mode = CO
    sweep.tx_power_dbm = 38,40,42,44,46,48,50

Unset keys take the default scenario: 30 MHz bandwidth, 10 GHz carrier,
32 dBi transmit gain, MEO height 20000 km, elevation pi/10, d_RU = 10 m,
path-loss exponents 2 / 2.2, spread gain 30 dB, target rates 0.0005 and
0.001 bps/Hz, CO split 0.6/0.4 (NO split 0.1/0.9).  Units are carried by
key suffixes (dbm, db, km, ghz, mhz, deg); everything is converted to SI
once at this boundary.

Navigation scene files use the same syntax with 3-vector values::

    sat1 = 24438951.0 6109737.8 4399011.0
    sat2 = ...
    sat3 = ...
    inac_sat = ...
    ris = 6378005.0 8.0 3.0
    user = 6378000.0 0.0 0.0
    clock_bias_s = 2.5e-4
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from .channel import RicianParams, RisArray
from .errors import ConfigError
from .geometry import LinkBudget, OrbitGeometry, RfParams, link_budget
from .montecarlo import McConfig
from .navigation import NavScene
from .noma import PowerSplit, RateTargets, Scenario, build_scenario

__all__ = [
    "ScenarioConfig",
    "load_config",
    "parse_config_text",
    "load_scene",
    "parse_scene_text",
    "default_scene",
]

#: split defaults per mode: (alpha_m_sq, alpha_u_sq)
_MODE_SPLITS = {"CO": (0.6, 0.4), "NO": (0.1, 0.9)}


@dataclass(frozen=True)
class ScenarioConfig:
    """Every physical and protocol parameter of one experiment, boundary units."""

    # orbit
    r_e_km: float = 6378.0
    r_m_km: float = 20000.0
    elevation_deg: float = 18.0
    # rf
    f_c_ghz: float = 10.0
    g_t_dbi: float = 32.0
    alpha1: float = 2.0
    alpha2: float = 2.2
    d_ru_m: float = 10.0
    # link
    bandwidth_mhz: float = 30.0
    tx_power_dbm: float = 46.0
    spread_gain_db: float = 30.0
    # ris
    elements: int = 128
    amplitude: float = 1.0
    # fading
    k_r: float = 1.0
    k_g: float = 0.0
    k_n: float = 0.0
    # noma
    mode: str = "CO"
    alpha_m_sq: float | None = None  # None: take the mode default
    alpha_u_sq: float | None = None
    multicast_rate_bpshz: float = 0.0005
    unicast_rate_bpshz: float = 0.001
    # mc
    trials: int = 20_000
    seed: int = 12345
    batch: int = 65_536
    # nav
    scene_file: str = ""
    nav_repetitions: int = 200
    # sweep grids
    sweep_tx_power_dbm: tuple[float, ...] = (38, 39, 40, 41, 42, 43, 44, 45, 46, 47, 48, 49, 50)
    sweep_elements_op: tuple[int, ...] = (8, 16, 32, 64, 128, 256)
    sweep_elements_cap: tuple[int, ...] = (16, 64, 256, 1024, 4096, 16384)
    sweep_alpha_u_sq: tuple[float, ...] = (0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95)
    sweep_r_m_km: tuple[float, ...] = (500, 1000, 2000, 4000, 8000, 12000, 20000, 30000)
    sweep_elevation_deg: tuple[float, ...] = (5, 15, 30, 45, 60, 75, 85)
    sweep_nav_elements: tuple[int, ...] = (0, 16, 64, 256, 1024, 4096, 16384)

    # --- SI conversions -----------------------------------------------------

    @property
    def bandwidth_hz(self) -> float:
        return self.bandwidth_mhz * 1e6

    @property
    def tx_power_w(self) -> float:
        return 10.0 ** (self.tx_power_dbm / 10.0) * 1e-3

    @property
    def spread_gain_linear(self) -> float:
        return 10.0 ** (self.spread_gain_db / 10.0)

    def orbit(self) -> OrbitGeometry:
        return OrbitGeometry(
            r_e=self.r_e_km * 1e3,
            r_m=self.r_m_km * 1e3,
            elevation=math.radians(self.elevation_deg),
        )

    def rf_params(self) -> RfParams:
        return RfParams(
            f_c=self.f_c_ghz * 1e9,
            g_t=10.0 ** (self.g_t_dbi / 10.0),
            alpha1=self.alpha1,
            alpha2=self.alpha2,
            d_ru=self.d_ru_m,
        )

    def link(self, tx_power_w: float | None = None) -> LinkBudget:
        return link_budget(
            self.orbit(),
            self.rf_params(),
            self.tx_power_w if tx_power_w is None else tx_power_w,
            self.spread_gain_linear,
            self.bandwidth_hz,
        )

    def ris_array(self, elements: int | None = None) -> RisArray:
        return RisArray(
            num_elements=self.elements if elements is None else elements,
            amplitude=self.amplitude,
        )

    def rician_params(self) -> RicianParams:
        return RicianParams(k_r=self.k_r, k_g=self.k_g, k_n=self.k_n)

    def power_split(self, mode: str | None = None) -> PowerSplit:
        mode = self.mode if mode is None else mode
        default_m, default_u = _MODE_SPLITS[mode]
        a_m, a_u = self.alpha_m_sq, self.alpha_u_sq
        if a_m is None and a_u is None:
            a_m, a_u = default_m, default_u
        elif a_m is None:
            a_m = 1.0 - a_u
        elif a_u is None:
            a_u = 1.0 - a_m
        return PowerSplit(alpha_m_sq=a_m, alpha_u_sq=a_u)

    def rate_targets(self) -> RateTargets:
        return RateTargets(r_m=self.multicast_rate_bpshz, r_u=self.unicast_rate_bpshz)

    def mc_config(self, trials: int | None = None, seed: int | None = None) -> McConfig:
        return McConfig(
            trials=self.trials if trials is None else trials,
            master_seed=self.seed if seed is None else seed,
            batch=self.batch,
        )

    def scenario(
        self,
        mode: str | None = None,
        tx_power_w: float | None = None,
        elements: int | None = None,
        split: PowerSplit | None = None,
    ) -> Scenario:
        mode = self.mode if mode is None else mode
        return build_scenario(
            mode=mode,
            split=self.power_split(mode) if split is None else split,
            targets=self.rate_targets(),
            budget=self.link(tx_power_w),
            ris=self.ris_array(elements),
            rician=self.rician_params(),
        )

    def nav_scene(self) -> NavScene:
        if self.scene_file:
            return load_scene(self.scene_file)
        return default_scene()

    # --- serialization ------------------------------------------------------

    def to_text(self) -> str:
        """Canonical config text; parsing it back reproduces this config."""
        lines = []
        for key, (attr, kind) in _KEYMAP.items():
            value = getattr(self, attr)
            if value is None:
                continue
            if kind in ("float_list", "int_list"):
                rendered = ",".join(repr(v) if kind == "float_list" else str(v) for v in value)
            elif kind == "float":
                rendered = repr(float(value))
            else:
                rendered = str(value)
            lines.append(f"{key} = {rendered}")
        return "\n".join(lines) + "\n"

    def validate(self) -> "ScenarioConfig":
        """Cross-field checks; raises ConfigError naming the violated invariant."""
        if self.mode not in _MODE_SPLITS:
            raise ConfigError(f"noma.mode must be CO or NO, got {self.mode!r}")
        try:
            self.orbit()
            self.rf_params()
            self.link()
            self.ris_array()
            self.rician_params()
            split = self.power_split()
            self.rate_targets()
            self.mc_config()
            sc = self.scenario(split=split)
        except (ValueError, ConfigError) as exc:
            raise ConfigError(str(exc)) from exc
        if not sc.feasible:
            raise ConfigError(
                f"power split (alpha_m_sq={split.alpha_m_sq}, alpha_u_sq={split.alpha_u_sq}) "
                f"cannot decode the first {self.mode} signal at any SNR"
            )
        for name in ("sweep_tx_power_dbm", "sweep_elements_op", "sweep_elements_cap",
                     "sweep_alpha_u_sq", "sweep_r_m_km", "sweep_elevation_deg",
                     "sweep_nav_elements"):
            if len(getattr(self, name)) == 0:
                raise ConfigError(f"{_ATTR_TO_KEY[name]} must not be empty")
        return self


def _build_keymap() -> dict[str, tuple[str, str]]:
    m: dict[str, tuple[str, str]] = {}
    groups = {
        "orbit": ["r_e_km", "r_m_km", "elevation_deg"],
        "rf": ["f_c_ghz", "g_t_dbi", "alpha1", "alpha2", "d_ru_m"],
        "link": ["bandwidth_mhz", "tx_power_dbm", "spread_gain_db"],
        "ris": ["elements", "amplitude"],
        "fading": ["k_r", "k_g", "k_n"],
        "noma": ["mode", "alpha_m_sq", "alpha_u_sq", "multicast_rate_bpshz", "unicast_rate_bpshz"],
        "mc": ["trials", "seed", "batch"],
        "nav": ["scene_file", "nav_repetitions"],
        "sweep": ["sweep_tx_power_dbm", "sweep_elements_op", "sweep_elements_cap",
                  "sweep_alpha_u_sq", "sweep_r_m_km", "sweep_elevation_deg",
                  "sweep_nav_elements"],
    }
    kinds: dict[str, str] = {}
    for f in fields(ScenarioConfig):
        if f.name in ("elements", "trials", "seed", "batch", "nav_repetitions"):
            kinds[f.name] = "int"
        elif f.name in ("mode", "scene_file"):
            kinds[f.name] = "str"
        elif f.name.startswith("sweep_"):
            kinds[f.name] = "int_list" if "elements" in f.name else "float_list"
        else:
            kinds[f.name] = "float"
    for group, names in groups.items():
        for name in names:
            if group == "sweep":
                key = f"sweep.{name.removeprefix('sweep_')}"
            elif group == "nav":
                key = f"nav.{name.removeprefix('nav_')}"
            else:
                key = f"{group}.{name}"
            m[key] = (name, kinds[name])
    return m


_KEYMAP = _build_keymap()
_ATTR_TO_KEY = {attr: key for key, (attr, _) in _KEYMAP.items()}


def _parse_value(raw: str, kind: str, key: str, lineno: int):
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            return int(raw)
        if kind == "str":
            return raw
        parts = [p.strip() for p in raw.split(",") if p.strip()]
        if kind == "float_list":
            return tuple(float(p) for p in parts)
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"line {lineno}: bad value for {key}: {raw!r}") from exc


def _key_value_lines(text: str):
    """Yield (lineno, key, raw_value) from key=value text, skipping comments."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, raw = stripped.split("=", 1)
        yield lineno, key.strip(), raw.strip()


def parse_config_text(text: str) -> ScenarioConfig:
    """Parse and validate config text over the default scenario."""
    overrides: dict[str, object] = {}
    seen: dict[str, int] = {}
    for lineno, key, raw in _key_value_lines(text):
        if key not in _KEYMAP:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} (first at line {seen[key]})")
        seen[key] = lineno
        attr, kind = _KEYMAP[key]
        overrides[attr] = _parse_value(raw, kind, key, lineno)
    return replace(ScenarioConfig(), **overrides).validate()


def load_config(path: str) -> ScenarioConfig:
    """Load, parse, and validate a config file; empty file gives the defaults."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text)


# --- navigation scenes ------------------------------------------------------

_SCENE_VECTORS = ("sat1", "sat2", "sat3", "inac_sat", "ris", "user")


def parse_scene_text(text: str) -> NavScene:
    """Parse a scene file: six position 3-vectors (m) and the clock bias (s)."""
    values: dict[str, object] = {}
    for lineno, key, raw in _key_value_lines(text):
        if key in _SCENE_VECTORS:
            parts = raw.split()
            if len(parts) != 3:
                raise ConfigError(f"line {lineno}: {key} needs 3 coordinates, got {raw!r}")
            try:
                values[key] = np.array([float(p) for p in parts])
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: bad coordinate in {raw!r}") from exc
        elif key == "clock_bias_s":
            try:
                values[key] = float(raw)
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: bad clock bias {raw!r}") from exc
        else:
            raise ConfigError(f"line {lineno}: unknown scene key {key!r}")
    missing = [k for k in (*_SCENE_VECTORS, "clock_bias_s") if k not in values]
    if missing:
        raise ConfigError(f"scene file missing keys: {', '.join(missing)}")
    return NavScene(
        sat_positions=np.vstack([values["sat1"], values["sat2"], values["sat3"]]),
        inac_sat_position=values["inac_sat"],
        ris_position=values["ris"],
        true_user=values["user"],
        clock_bias=values["clock_bias_s"],
    )


def load_scene(path: str) -> NavScene:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read scene file {path}: {exc}") from exc
    return parse_scene_text(text)


def default_scene() -> NavScene:
    """Built-in MEO scene: user on the +x surface point, RIS ~10 m away.

    The four anchors sit on the 26378 km sphere in well-separated directions
    above the user's horizon, giving a comfortably non-degenerate design
    matrix (GDOP of a few).
    """
    r_orbit = (6378.0 + 20000.0) * 1e3

    def on_sphere(direction) -> np.ndarray:
        d = np.asarray(direction, dtype=float)
        return r_orbit * d / np.linalg.norm(d)

    return NavScene(
        sat_positions=np.vstack(
            [
                on_sphere([1.0, 0.25, 0.18]),
                on_sphere([1.0, -0.35, 0.22]),
                on_sphere([1.0, 0.10, -0.40]),
            ]
        ),
        inac_sat_position=on_sphere([1.0, 0.45, -0.05]),
        ris_position=np.array([6378005.0, 8.0, 3.0]),
        true_user=np.array([6378000.0, 0.0, 0.0]),
        clock_bias=2.5e-4,
    )

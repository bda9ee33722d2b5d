"""Figure-reproduction sweeps and deterministic CSV reports.

Each figure id maps to one parameter sweep over the configured scenario:

    op-vs-power      outage vs transmit power (closed form, asymptotic, MC)
    op-vs-elements   outage vs RIS element count
    cap-vs-power     capacity vs transmit power (hardened limit vs MC)
    cap-vs-elements  capacity vs element count, all four hardened curves
                     plus MC for the configured mode (CO/NO crossing)
    outage-vs-split  NO-mode outage vs the uni-cast power share
    constellation    minimal satellite count over height x elevation
    nav-accuracy     positioning RMSE vs element count for both modes

Asymptotic cells outside the series validity region are reported as NA, not
zero.  Per-point numeric failures are recorded in-row so a sweep never
aborts halfway.  Reports serialize to RFC-4180-style CSV and are
byte-reproducible for a fixed config and seed.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.random import Generator, Philox

from . import navigation, noma
from .config import ScenarioConfig
from .errors import NumericError
from .geometry import OrbitGeometry, coverage_area, geocentric_angle, min_satellites
from .montecarlo import (
    outage_events,
    sample_cascaded_gains,
    wilson_half_width,
)
from .noma import PowerSplit, Scenario

__all__ = ["FIGURE_IDS", "SweepReport", "run_sweep", "emit_csv", "report_to_csv_text"]

FIGURE_IDS = (
    "op-vs-power",
    "op-vs-elements",
    "cap-vs-power",
    "cap-vs-elements",
    "outage-vs-split",
    "constellation",
    "nav-accuracy",
)

#: seed-domain separator so navigation noise never aliases channel draws
_NAV_SEED_SALT = 0x6E61765F


@dataclass(frozen=True)
class SweepReport:
    """One sweep: the independent variable grid plus aligned result columns.

    Column values are floats/ints or None; None renders as NA (used for
    out-of-region asymptotics and per-point numeric failures).
    """

    figure_id: str
    x_name: str
    x: list
    columns: dict[str, list]

    def __post_init__(self) -> None:
        for name, values in self.columns.items():
            if len(values) != len(self.x):
                raise ValueError(f"column {name} has {len(values)} rows, grid has {len(self.x)}")


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def report_to_csv_text(report: SweepReport) -> str:
    """Render a report as RFC-4180 CSV text (CRLF line endings)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow([report.x_name, *report.columns.keys()])
    for i, x in enumerate(report.x):
        writer.writerow([_fmt(x), *(_fmt(col[i]) for col in report.columns.values())])
    return buf.getvalue()


def emit_csv(report: SweepReport, path) -> None:
    """Write the report to a path or file-like object."""
    text = report_to_csv_text(report)
    if hasattr(path, "write"):
        path.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# --- per-figure sweep builders ----------------------------------------------


def _asymptotic_or_none(sc: Scenario, signal: str):
    try:
        return noma.outage_asymptotic(sc, signal).value
    except NumericError:
        return None


def _outage_point(gains: np.ndarray, sc: Scenario, signal: str) -> tuple[float, float]:
    """(frequency, half-width) of the outage event over precomputed gains."""
    n = gains.shape[0]
    count = int(np.count_nonzero(outage_events(gains, sc, signal)))
    return count / n, wilson_half_width(count, n)


def _sweep_op_vs_power(cfg: ScenarioConfig) -> SweepReport:
    base = cfg.scenario()
    gains = sample_cascaded_gains(base.ris, base.rician, cfg.mc_config())
    cols: dict[str, list] = {
        f"{sig}_{name}": []
        for sig in noma.SIGNALS
        for name in ("closed_form", "asymptotic", "mc", "mc_half_width")
    }
    for dbm in cfg.sweep_tx_power_dbm:
        sc = base.with_tx_power(10.0 ** (dbm / 10.0) * 1e-3)
        for sig in noma.SIGNALS:
            cols[f"{sig}_closed_form"].append(noma.outage_closed_form(sc, sig).value)
            cols[f"{sig}_asymptotic"].append(_asymptotic_or_none(sc, sig))
            freq, hw = _outage_point(gains, sc, sig)
            cols[f"{sig}_mc"].append(freq)
            cols[f"{sig}_mc_half_width"].append(hw)
    return SweepReport("op-vs-power", "tx_power_dbm", list(cfg.sweep_tx_power_dbm), cols)


def _sweep_op_vs_elements(cfg: ScenarioConfig) -> SweepReport:
    cols: dict[str, list] = {
        f"{sig}_{name}": []
        for sig in noma.SIGNALS
        for name in ("closed_form", "asymptotic", "mc", "mc_half_width")
    }
    for L in cfg.sweep_elements_op:
        sc = cfg.scenario(elements=L)
        gains = sample_cascaded_gains(sc.ris, sc.rician, cfg.mc_config())
        for sig in noma.SIGNALS:
            cols[f"{sig}_closed_form"].append(noma.outage_closed_form(sc, sig).value)
            cols[f"{sig}_asymptotic"].append(_asymptotic_or_none(sc, sig))
            freq, hw = _outage_point(gains, sc, sig)
            cols[f"{sig}_mc"].append(freq)
            cols[f"{sig}_mc_half_width"].append(hw)
    return SweepReport("op-vs-elements", "elements", list(cfg.sweep_elements_op), cols)


def _capacity_point(gains: np.ndarray, sc: Scenario, signal: str) -> tuple[float, float]:
    if sc.mode == "CO":
        sinr = noma.sinr_co_multicast(gains, sc) if signal == "multicast" else noma.sinr_co_unicast(gains, sc)
    else:
        sinr = noma.sinr_no_multicast(gains, sc) if signal == "multicast" else noma.sinr_no_unicast(gains, sc)
    rates = np.log2(1.0 + sinr)
    n = rates.shape[0]
    hw = 1.959963984540054 * float(np.std(rates, ddof=1)) / math.sqrt(n) if n > 1 else 0.0
    return float(np.mean(rates)), hw


def _sweep_cap_vs_power(cfg: ScenarioConfig) -> SweepReport:
    base = cfg.scenario()
    gains = sample_cascaded_gains(base.ris, base.rician, cfg.mc_config())
    cols: dict[str, list] = {
        f"{sig}_{name}": []
        for sig in noma.SIGNALS
        for name in ("hardened", "mc", "mc_half_width")
    }
    for dbm in cfg.sweep_tx_power_dbm:
        sc = base.with_tx_power(10.0 ** (dbm / 10.0) * 1e-3)
        for sig in noma.SIGNALS:
            cols[f"{sig}_hardened"].append(noma.capacity_hardened(sc, sig))
            mean, hw = _capacity_point(gains, sc, sig)
            cols[f"{sig}_mc"].append(mean)
            cols[f"{sig}_mc_half_width"].append(hw)
    return SweepReport("cap-vs-power", "tx_power_dbm", list(cfg.sweep_tx_power_dbm), cols)


def _sweep_cap_vs_elements(cfg: ScenarioConfig) -> SweepReport:
    cols: dict[str, list] = {
        name: []
        for name in (
            "co_multicast_hardened",
            "co_unicast_hardened",
            "no_multicast_hardened",
            "no_unicast_hardened",
            "multicast_mc",
            "multicast_mc_half_width",
            "unicast_mc",
            "unicast_mc_half_width",
        )
    }
    for L in cfg.sweep_elements_cap:
        for mode in noma.MODES:
            sc = cfg.scenario(mode=mode, elements=L)
            for sig in noma.SIGNALS:
                cols[f"{mode.lower()}_{sig}_hardened"].append(noma.capacity_hardened(sc, sig))
        sc = cfg.scenario(elements=L)
        gains = sample_cascaded_gains(sc.ris, sc.rician, cfg.mc_config())
        for sig in noma.SIGNALS:
            mean, hw = _capacity_point(gains, sc, sig)
            cols[f"{sig}_mc"].append(mean)
            cols[f"{sig}_mc_half_width"].append(hw)
    return SweepReport("cap-vs-elements", "elements", list(cfg.sweep_elements_cap), cols)


def _sweep_outage_vs_split(cfg: ScenarioConfig) -> SweepReport:
    """NO-mode outage against the uni-cast share (CO saturates immediately there)."""
    base = cfg.scenario(mode="NO")
    gains = sample_cascaded_gains(base.ris, base.rician, cfg.mc_config())
    cols: dict[str, list] = {
        f"{sig}_{name}": []
        for sig in noma.SIGNALS
        for name in ("closed_form", "mc", "mc_half_width")
    }
    for a_u in cfg.sweep_alpha_u_sq:
        split = PowerSplit(alpha_m_sq=1.0 - a_u, alpha_u_sq=a_u)
        sc = replace(base, split=split)
        for sig in noma.SIGNALS:
            cols[f"{sig}_closed_form"].append(noma.outage_closed_form(sc, sig).value)
            freq, hw = _outage_point(gains, sc, sig)
            cols[f"{sig}_mc"].append(freq)
            cols[f"{sig}_mc_half_width"].append(hw)
    return SweepReport("outage-vs-split", "alpha_u_sq", list(cfg.sweep_alpha_u_sq), cols)


def _sweep_constellation(cfg: ScenarioConfig) -> SweepReport:
    xs: list[float] = []
    cols: dict[str, list] = {
        "elevation_deg": [],
        "geocentric_angle_rad": [],
        "coverage_area_km2": [],
        "min_satellites": [],
    }
    r_e = cfg.r_e_km * 1e3
    for r_m_km in cfg.sweep_r_m_km:
        for elev_deg in cfg.sweep_elevation_deg:
            geom = OrbitGeometry(r_e=r_e, r_m=r_m_km * 1e3, elevation=math.radians(elev_deg))
            xs.append(r_m_km)
            cols["elevation_deg"].append(elev_deg)
            cols["geocentric_angle_rad"].append(geocentric_angle(geom))
            cols["coverage_area_km2"].append(coverage_area(geom) / 1e6)
            try:
                cols["min_satellites"].append(min_satellites(geom))
            except NumericError:
                cols["min_satellites"].append(None)
    return SweepReport("constellation", "r_m_km", xs, cols)


_NAV_INTEGRATION_GAIN = 1.0e6  # correlator samples accumulated per range estimate
_NAV_CHIP_FRACTION = 0.01  # code-tracking resolution floor, as a fraction of one chip


def _nav_sigma(cfg: ScenarioConfig, mode: str, elements: int) -> float:
    """Pseudorange noise for a mode and element count via the hardened SNR.

    The delay estimator integrates _NAV_INTEGRATION_GAIN correlator samples,
    so the SNR entering the ranging bound is the hardened signal SNR times
    that gain; the floor is a fixed fraction of the code chip length.
    """
    if elements < 1:
        return math.inf  # no RIS: the relayed link does not exist
    sc = cfg.scenario(mode=mode, elements=elements)
    gain = sc.moments.m3 ** 2
    if mode == "CO":
        snr = noma.sinr_co_multicast(gain, sc)
    else:
        snr = noma.sinr_no_multicast(gain, sc)
    chip = navigation.SPEED_OF_LIGHT / cfg.bandwidth_hz
    return navigation.range_noise_from_snr(
        float(snr) * _NAV_INTEGRATION_GAIN, cfg.bandwidth_hz,
        floor=_NAV_CHIP_FRACTION * chip)


def _sweep_nav_accuracy(cfg: ScenarioConfig) -> SweepReport:
    scene = cfg.nav_scene()
    reps = cfg.nav_repetitions
    rng = Generator(Philox(key=cfg.seed ^ _NAV_SEED_SALT))
    noise = rng.standard_normal((reps, 4))  # shared across modes and grid points
    truth_state = np.append(scene.true_user, navigation.SPEED_OF_LIGHT * scene.clock_bias)
    clean_rho = navigation.predicted_pseudoranges(scene, truth_state)
    ctrl = navigation.LsmControl(iters=12, loss=1e-6)

    def rmse(sigma: float):
        if math.isinf(sigma):
            return math.inf
        sq = 0.0
        for i in range(reps):
            pr = navigation.PseudorangeSet(rho=clean_rho + sigma * noise[i], sigma=np.full(4, sigma))
            fix = navigation.lsm_solve(pr, scene, ctrl)
            err = fix.position - scene.true_user
            sq += float(err @ err)
        return math.sqrt(sq / reps)

    cols: dict[str, list] = {"co_sigma_m": [], "co_rmse_m": [], "no_sigma_m": [], "no_rmse_m": []}
    for L in cfg.sweep_nav_elements:
        for mode in noma.MODES:
            sigma = _nav_sigma(cfg, mode, L)
            cols[f"{mode.lower()}_sigma_m"].append(sigma)
            cols[f"{mode.lower()}_rmse_m"].append(rmse(sigma))
    return SweepReport("nav-accuracy", "elements", list(cfg.sweep_nav_elements), cols)


_SWEEPS = {
    "op-vs-power": _sweep_op_vs_power,
    "op-vs-elements": _sweep_op_vs_elements,
    "cap-vs-power": _sweep_cap_vs_power,
    "cap-vs-elements": _sweep_cap_vs_elements,
    "outage-vs-split": _sweep_outage_vs_split,
    "constellation": _sweep_constellation,
    "nav-accuracy": _sweep_nav_accuracy,
}


def run_sweep(config: ScenarioConfig, figure_id: str) -> SweepReport:
    """Execute the sweep matching a figure id."""
    if figure_id not in _SWEEPS:
        raise ValueError(f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}")
    return _SWEEPS[figure_id](config)

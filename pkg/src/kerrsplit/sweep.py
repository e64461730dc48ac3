"""Configuration-driven sweeps: entropy curves and surfaces, Husimi grids,
and decoherence scans, with CSV/JSON emission.

Scenarios are plain JSON documents.  Every pipeline stage is deterministic
(there is no randomness anywhere), so identical configs produce byte-identical
CSV files, and parallel execution over grid points returns exactly the serial
results in the same order.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__

from .beamsplitter import output_at_time
from .decoherence import ChannelParams, damp
from .entanglement import entanglement_entropy, log_negativity, pure_to_density
from .fock import CutoffPolicy, InitialStateSpec, build_initial_state, choose_cutoff
from .husimi import (
    count_peaks,
    husimi_q,
    n_max_estimate,
    write_grid_csv,
    write_grid_matrix,
)
from .kerr import kerr_evolve

__all__ = [
    "ConfigError",
    "CurveRecord",
    "GridSpec",
    "InfeasibleScenarioError",
    "ScenarioConfig",
    "run_decoherence_scan",
    "run_entropy_curve",
    "run_entropy_surface",
    "run_husimi",
    "write_records_csv",
]

# prune entropy local minima shallower than this (ebits)
MINIMUM_PROMINENCE = 0.05


class ConfigError(ValueError):
    """Invalid scenario configuration; the message names the offending field."""


class InfeasibleScenarioError(RuntimeError):
    """A requested state needs a density matrix beyond the dimension cap."""


@dataclass(frozen=True)
class GridSpec:
    """Uniform 1-D grid: ``steps`` points from start to stop inclusive."""

    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("grid endpoints must be finite")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class HusimiSection:
    taus: tuple = ()
    resolution: int = 201
    half_width: float | None = None
    rel_threshold: float = 0.1


@dataclass(frozen=True)
class ChannelSection:
    """Loss-channel part of a scenario: rates, the gamma*tau axis, the revival
    fraction feeding the splitter, and which photon-addition numbers to scan."""

    gamma1: float = 0.1
    gamma2: float = 0.1
    gamma_tau_grid: GridSpec | None = GridSpec(0.0, 1.0, 51)
    gamma_tau: float = 0.3
    tau: float = 0.5
    m_values: tuple = ()


@dataclass(frozen=True)
class ScenarioConfig:
    name: str = "scenario"
    initial: InitialStateSpec = InitialStateSpec(nu=5.0)
    time_grid: GridSpec = GridSpec(0.0, 1.0, 1000)
    nu_grid: GridSpec | None = None
    husimi: HusimiSection = HusimiSection()
    channel: ChannelSection | None = None
    cutoff: CutoffPolicy = CutoffPolicy()
    outputs: tuple = ()
    q_max: int = 12
    workers: int = 1
    dim_cap: int = 4096


@dataclass(frozen=True)
class CurveRecord:
    """One grid point of an emitted curve, with per-row metadata."""

    abscissa_label: str
    abscissa: float
    ordinate_label: str
    ordinate: float
    metadata: dict = field(default_factory=dict)


_KNOWN_OUTPUTS = (
    "entropy-curve",
    "entropy-surface",
    "husimi-grid",
    "negativity-vs-gammatau",
    "negativity-vs-nu",
)


def _parse_section(field_name, raw, builder):
    if not isinstance(raw, dict):
        raise ConfigError(f"{field_name}: expected an object, got {type(raw).__name__}")
    try:
        return builder(**raw)
    except TypeError as exc:
        raise ConfigError(f"{field_name}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"{field_name}: {exc}") from exc


def config_from_dict(raw: dict) -> ScenarioConfig:
    """Build a validated ScenarioConfig; unknown or malformed fields raise
    ConfigError naming the field."""
    if not isinstance(raw, dict):
        raise ConfigError("config: expected a JSON object at top level")
    known = {
        "name",
        "initial",
        "time_grid",
        "nu_grid",
        "husimi",
        "channel",
        "cutoff",
        "outputs",
        "q_max",
        "workers",
        "dim_cap",
    }
    for key in raw:
        if key not in known:
            raise ConfigError(f"{key}: unknown config field")

    kwargs = {}
    if "name" in raw:
        if not isinstance(raw["name"], str) or not raw["name"]:
            raise ConfigError("name: must be a non-empty string")
        kwargs["name"] = raw["name"]
    if "initial" in raw:
        kwargs["initial"] = _parse_section("initial", raw["initial"], InitialStateSpec)
    if "time_grid" in raw:
        kwargs["time_grid"] = _parse_section("time_grid", raw["time_grid"], GridSpec)
    if raw.get("nu_grid") is not None:
        kwargs["nu_grid"] = _parse_section("nu_grid", raw["nu_grid"], GridSpec)
    if "husimi" in raw:
        section = dict(raw["husimi"]) if isinstance(raw["husimi"], dict) else raw["husimi"]
        if isinstance(section, dict) and "taus" in section:
            section["taus"] = tuple(section["taus"])
        kwargs["husimi"] = _parse_section("husimi", section, HusimiSection)
    if raw.get("channel") is not None:
        section = dict(raw["channel"])
        if "gamma_tau_grid" in section and section["gamma_tau_grid"] is not None:
            section["gamma_tau_grid"] = _parse_section(
                "channel.gamma_tau_grid", section["gamma_tau_grid"], GridSpec
            )
        if "m_values" in section:
            section["m_values"] = tuple(section["m_values"])
        kwargs["channel"] = _parse_section("channel", section, ChannelSection)
    if "cutoff" in raw:
        kwargs["cutoff"] = _parse_section("cutoff", raw["cutoff"], CutoffPolicy)
    if "outputs" in raw:
        outputs = tuple(raw["outputs"])
        for out in outputs:
            if out not in _KNOWN_OUTPUTS:
                raise ConfigError(f"outputs: unknown artifact {out!r}")
        kwargs["outputs"] = outputs
    for key in ("q_max", "workers", "dim_cap"):
        if key in raw:
            value = raw[key]
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"{key}: must be a positive integer")
            kwargs[key] = value
    return ScenarioConfig(**kwargs)


def config_from_json(path) -> ScenarioConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON in {path}: {exc}") from exc
    return config_from_dict(raw)


# ---------------------------------------------------------------------------
# grid-point workers (module level so process pools can pickle them)

def _entropy_task(args) -> float:
    nu, theta, m, tau, tail_tol, safety_margin = args
    policy = CutoffPolicy(tail_tol=tail_tol, safety_margin=safety_margin)
    spec = InitialStateSpec(nu=nu, theta=theta, m=m)
    return entanglement_entropy(output_at_time(spec, tau, policy=policy))


def _negativity_task(args) -> float:
    nu, theta, m, revival_tau, gamma_tau, gamma1, gamma2, tail_tol, margin, dim_cap = args
    policy = CutoffPolicy(tail_tol=tail_tol, safety_margin=margin)
    spec = InitialStateSpec(nu=nu, theta=theta, m=m)
    phi = output_at_time(spec, revival_tau, policy=policy)
    params = ChannelParams(gamma1=gamma1, gamma2=gamma2)
    tau = gamma_tau / gamma1 if gamma_tau > 0 else 0.0
    rho = damp(pure_to_density(phi), tau, params, dim_cap)
    return log_negativity(rho)


def _map_points(fn, tasks, workers: int) -> list:
    if workers <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=chunk))


# ---------------------------------------------------------------------------
# local-minimum detection and rational annotation

def _prominent_minima(values: np.ndarray, floor: float = MINIMUM_PROMINENCE) -> list[int]:
    """Indices of interior local minima with topographic prominence >= floor.

    Basins are grown in ascending value order and merged where they meet; a
    basin's prominence is the barrier height at which it merges into a deeper
    one.  Merging (rather than walking from each stencil minimum) keeps a deep
    dip split across two grid points from pruning both halves.  Endpoints are
    not reported.
    """
    n = len(values)
    order = np.argsort(values, kind="stable")
    basin = np.full(n, -1, dtype=np.int64)  # -1 = unvisited, else basin seed index
    prominence: dict[int, float] = {}
    for raw in order:
        i = int(raw)
        seeds = {int(basin[j]) for j in (i - 1, i + 1) if 0 <= j < n and basin[j] != -1}
        if not seeds:
            basin[i] = i  # seed = lowest point of its basin (ascending sweep)
            continue
        deepest, *rest = sorted(seeds, key=lambda s: values[s])
        basin[i] = deepest
        for s in rest:
            prominence[s] = float(values[i] - values[s])
            basin[basin == s] = deepest
    for s in set(np.flatnonzero(basin == np.arange(n))) - set(prominence):
        prominence[int(s)] = float(values.max() - values[s])

    def interior_minimum(i: int) -> bool:
        # plateau-aware stencil: the nearest non-equal values on both sides rise
        a = i
        while a > 0 and values[a - 1] == values[i]:
            a -= 1
        b = i
        while b < n - 1 and values[b + 1] == values[i]:
            b += 1
        return a > 0 and b < n - 1 and values[a - 1] > values[i] < values[b + 1]

    return sorted(i for i, prom in prominence.items() if prom >= floor and interior_minimum(i))


def nearest_rational(tau: float, q_max: int) -> tuple[int, int]:
    """Best rational approximation p/q to tau with q <= q_max (continued
    fractions via Fraction.limit_denominator)."""
    frac = Fraction(tau).limit_denominator(q_max)
    return frac.numerator, frac.denominator


# ---------------------------------------------------------------------------
# scenario runners

def _cap_check(nu: float, m: int, policy: CutoffPolicy, dim_cap: int) -> int:
    n_cut = choose_cutoff(nu, m, policy)
    d = n_cut + 1
    if d * d > dim_cap:
        raise InfeasibleScenarioError(
            f"scenario state (nu={nu:g}, m={m}) needs two-mode dimension "
            f"{d}^2 = {d * d} > dim_cap {dim_cap}"
        )
    return n_cut


def run_entropy_curve(config: ScenarioConfig) -> list[CurveRecord]:
    """Entanglement entropy over the time grid, with prominent local minima
    annotated by the nearest rational revival fraction p/q."""
    init = config.initial
    n_cut = choose_cutoff(init.nu, init.m, config.cutoff)
    taus = config.time_grid.values()
    tasks = [
        (init.nu, init.theta, init.m, float(t), config.cutoff.tail_tol,
         config.cutoff.safety_margin)
        for t in taus
    ]
    entropies = _map_points(_entropy_task, tasks, config.workers)
    minima = set(_prominent_minima(np.asarray(entropies)))

    records = []
    for i, (tau, ent) in enumerate(zip(taus, entropies)):
        meta = {"nu": init.nu, "m": init.m, "theta": init.theta, "n_cut": n_cut,
                "local_min": 1 if i in minima else 0}
        if i in minima:
            p, q = nearest_rational(float(tau), config.q_max)
            meta["revival_p"], meta["revival_q"] = p, q
        records.append(CurveRecord("tau", float(tau), "entropy_ebits", float(ent), meta))
    return records


def entropy_curve_summary(config: ScenarioConfig, records: list[CurveRecord]) -> dict:
    """Curve-level summary: E_max and the annotated minima, each compared
    against the log2(q) value a maximally entangled q-dimensional state
    would give."""
    minima = []
    for rec in records:
        if not rec.metadata.get("local_min"):
            continue
        q = rec.metadata["revival_q"]
        minima.append(
            {
                "tau": rec.abscissa,
                "revival_p": rec.metadata["revival_p"],
                "revival_q": q,
                "entropy_ebits": rec.ordinate,
                "log2_q": math.log2(q),
                "deviation_from_log2_q": rec.ordinate - math.log2(q),
            }
        )
    return {
        "name": config.name,
        "nu": config.initial.nu,
        "m": config.initial.m,
        "theta": config.initial.theta,
        "e_max": max(rec.ordinate for rec in records),
        "n_minima": len(minima),
        "minima": minima,
    }


def run_entropy_surface(config: ScenarioConfig) -> list[CurveRecord]:
    """Entropy over the (tau, nu) product grid, tau-major row order."""
    if config.nu_grid is None:
        raise ConfigError("nu_grid: required for an entropy surface")
    init = config.initial
    taus = config.time_grid.values()
    nus = config.nu_grid.values()
    tasks = [
        (float(nu), init.theta, init.m, float(tau), config.cutoff.tail_tol,
         config.cutoff.safety_margin)
        for tau in taus
        for nu in nus
    ]
    entropies = _map_points(_entropy_task, tasks, config.workers)
    n_cuts = {float(nu): choose_cutoff(float(nu), init.m, config.cutoff) for nu in nus}

    records = []
    for (nu, _theta, m, tau, _tol, _margin), ent in zip(tasks, entropies):
        meta = {"nu": nu, "m": m, "theta": init.theta, "n_cut": n_cuts[nu]}
        records.append(CurveRecord("tau", tau, "entropy_ebits", float(ent), meta))
    return records


def run_decoherence_scan(config: ScenarioConfig) -> list[CurveRecord]:
    """Log-negativity curves under photon loss.

    With a gamma_tau grid: one E_N(gamma*tau) curve per configured m.  With a
    nu grid and a fixed gamma_tau: E_N(nu) per configured m.  Dimension-cap
    violations fail before any heavy work, naming the offending (nu, m).
    """
    if config.channel is None:
        raise ConfigError("channel: section required for a decoherence scan")
    chan = config.channel
    if chan.gamma1 <= 0:
        raise ConfigError("channel.gamma1: must be > 0 for a decoherence scan")
    init = config.initial
    m_values = chan.m_values if chan.m_values else (init.m,)

    records = []
    if chan.gamma_tau_grid is not None:
        gamma_taus = chan.gamma_tau_grid.values()
        for m in m_values:
            n_cut = _cap_check(init.nu, m, config.cutoff, config.dim_cap)
            tasks = [
                (init.nu, init.theta, m, chan.tau, float(g), chan.gamma1, chan.gamma2,
                 config.cutoff.tail_tol, config.cutoff.safety_margin, config.dim_cap)
                for g in gamma_taus
            ]
            values = _map_points(_negativity_task, tasks, config.workers)
            for g, en in zip(gamma_taus, values):
                meta = {"nu": init.nu, "m": m, "theta": init.theta, "n_cut": n_cut,
                        "revival_tau": chan.tau}
                records.append(
                    CurveRecord("gamma_tau", float(g), "log_negativity", float(en), meta)
                )
        return records

    if config.nu_grid is not None:
        nus = config.nu_grid.values()
        for m in m_values:
            for nu in nus:
                _cap_check(float(nu), m, config.cutoff, config.dim_cap)
            tasks = [
                (float(nu), init.theta, m, chan.tau, chan.gamma_tau, chan.gamma1,
                 chan.gamma2, config.cutoff.tail_tol, config.cutoff.safety_margin,
                 config.dim_cap)
                for nu in nus
            ]
            values = _map_points(_negativity_task, tasks, config.workers)
            for nu, en in zip(nus, values):
                n_cut = choose_cutoff(float(nu), m, config.cutoff)
                meta = {"nu": float(nu), "m": m, "theta": init.theta, "n_cut": n_cut,
                        "revival_tau": chan.tau, "gamma_tau": chan.gamma_tau}
                records.append(
                    CurveRecord("nu", float(nu), "log_negativity", float(en), meta)
                )
        return records

    raise ConfigError("channel: need gamma_tau_grid, or nu_grid plus a fixed gamma_tau")


def run_husimi(config: ScenarioConfig, out_dir) -> dict:
    """Write one Q grid (CSV plus dense-matrix file) per requested tau and
    return the summary with peak counts and the distinguishability estimate."""
    section = config.husimi
    if not section.taus:
        raise ConfigError("husimi.taus: at least one tau value is required")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    init = config.initial
    n_cut = choose_cutoff(init.nu, init.m, config.cutoff)
    base = build_initial_state(init, n_cut=n_cut, policy=config.cutoff)

    entries = []
    for tau in section.taus:
        state = kerr_evolve(base, float(tau))
        grid = husimi_q(state, half_width=section.half_width,
                        resolution=section.resolution)
        stem = f"{config.name}_husimi_tau_{float(tau):.6g}"
        csv_path = out_dir / f"{stem}.csv"
        mat_path = out_dir / f"{stem}.qmat"
        write_grid_csv(grid, csv_path)
        write_grid_matrix(grid, mat_path)
        entries.append(
            {
                "tau": float(tau),
                "peak_count": count_peaks(grid, section.rel_threshold),
                "files": [csv_path.name, mat_path.name],
                "q_max_value": float(grid.values.max()),
                "normalization": grid.normalization(),
            }
        )
    return {
        "name": config.name,
        "nu": init.nu,
        "m": init.m,
        "theta": init.theta,
        "n_cut": n_cut,
        "resolution": section.resolution,
        "rel_threshold": section.rel_threshold,
        "n_max_estimate": n_max_estimate(math.sqrt(init.nu)),
        "grids": entries,
    }


# ---------------------------------------------------------------------------
# CSV emission

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def scenario_metadata(config: ScenarioConfig, n_cut: int | None = None) -> dict:
    meta = {
        "name": config.name,
        "nu": config.initial.nu,
        "m": config.initial.m,
        "theta": config.initial.theta,
    }
    if n_cut is not None:
        meta["n_cut"] = n_cut
    meta["tail_tol"] = config.cutoff.tail_tol
    meta["safety_margin"] = config.cutoff.safety_margin
    meta["tool"] = f"kerrsplit {__version__}"
    return meta


def write_records_csv(path, records: list[CurveRecord], extra_columns=(),
                      metadata: dict | None = None) -> None:
    """Header row plus '#'-prefixed metadata block; extra columns are pulled
    from each record's metadata (blank when missing)."""
    if not records:
        raise ValueError("no records to write")
    lines = []
    for key, value in (metadata or {}).items():
        lines.append(f"# {key}: {_fmt(value)}")
    header = [records[0].abscissa_label, records[0].ordinate_label, *extra_columns]
    lines.append(",".join(header))
    for rec in records:
        row = [_fmt(rec.abscissa), _fmt(rec.ordinate)]
        row.extend(_fmt(rec.metadata.get(col)) for col in extra_columns)
        lines.append(",".join(row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def with_overrides(config: ScenarioConfig, **overrides) -> ScenarioConfig:
    """Apply CLI-style overrides (nu, m, theta, tau_steps, name, workers)."""
    out = config
    init_changes = {}
    for key in ("nu", "m", "theta"):
        if overrides.get(key) is not None:
            init_changes[key] = overrides[key]
    if init_changes:
        out = replace(out, initial=replace(out.initial, **init_changes))
    if overrides.get("tau_steps") is not None:
        out = replace(out, time_grid=replace(out.time_grid, steps=overrides["tau_steps"]))
    if overrides.get("name") is not None:
        out = replace(out, name=overrides["name"])
    if overrides.get("workers") is not None:
        out = replace(out, workers=overrides["workers"])
    return out

"""Husimi Q-function on a rectangular phase-space grid, plus peak counting.

Conventions: probe coherent state beta = (x + i*p)/sqrt(2), i.e. unit-variance
vacuum with x = sqrt(2)*Re(beta), p = sqrt(2)*Im(beta), and

    Q(x, p) = (1/pi) * |<beta|psi>|^2
            = (1/pi) * exp(-|beta|^2) * |sum_n conj(beta)^n c_n / sqrt(n!)|^2.

Q is bounded by 1/pi, a coherent state peaks at (sqrt(2)Re alpha,
sqrt(2)Im alpha), and the phase-space measure is dx dp / 2 (so sum(Q)*dx*dp/2
is ~1 on a window enclosing the state).  Q is evaluated directly from the
Fock amplitudes by a Horner pass over the grid.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .fock import FockVector

__all__ = [
    "PhaseSpaceGrid",
    "count_peaks",
    "default_half_width",
    "husimi_q",
    "n_max_estimate",
    "write_grid_csv",
    "write_grid_matrix",
]


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Q values sampled on a rectangular lattice: values[i, j] = Q(x[i], p[j])."""

    x: np.ndarray
    p: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        p = np.array(self.p, dtype=float)
        values = np.array(self.values, dtype=float)
        if values.shape != (len(x), len(p)):
            raise ValueError("values must have shape (len(x), len(p))")
        for arr in (x, p, values):
            arr.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "values", values)

    @property
    def bounds(self) -> tuple[float, float, float, float]:
        return float(self.x[0]), float(self.x[-1]), float(self.p[0]), float(self.p[-1])

    def normalization(self) -> float:
        """Discrete quasi-probability mass sum(Q)*dx*dp/2; ~1 when the window
        encloses the state's support."""
        dx = float(self.x[1] - self.x[0])
        dp = float(self.p[1] - self.p[0])
        return float(self.values.sum() * dx * dp / 2.0)


def default_half_width(mean_photons: float) -> float:
    """Window half-width enclosing all sub-packets with margin: the packets sit
    on a circle of radius sqrt(2 * <n>) in (x, p)."""
    return 2.0 + 1.6 * math.sqrt(2.0 * max(mean_photons, 0.0))


def husimi_q(
    state: FockVector,
    half_width: float | None = None,
    resolution: int = 201,
    bounds: tuple[float, float, float, float] | None = None,
) -> PhaseSpaceGrid:
    """Evaluate Q on a square window of the given half-width (default sized
    from the state's mean photon number), or on explicit (x0, x1, p0, p1)
    bounds."""
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2 per axis, got {resolution}")
    if bounds is None:
        if half_width is None:
            half_width = default_half_width(state.mean_photon_number())
        bounds = (-half_width, half_width, -half_width, half_width)
    x = np.linspace(bounds[0], bounds[1], resolution)
    p = np.linspace(bounds[2], bounds[3], resolution)

    n = np.arange(len(state.amplitudes))
    coeff = state.amplitudes * np.exp(-0.5 * gammaln(n + 1))
    z = (x[:, None] - 1j * p[None, :]) / math.sqrt(2.0)  # conj(beta)
    acc = np.zeros_like(z)
    for c in coeff[::-1]:
        acc = acc * z + c
    q = np.exp(-np.abs(z) ** 2) * np.abs(acc) ** 2 / math.pi
    return PhaseSpaceGrid(x, p, q)


def n_max_estimate(alpha_mag: float) -> float:
    """Largest number of sub-packets distinguishable on the circle of radius
    |alpha|: pi * |alpha| / sqrt(ln 10)."""
    if alpha_mag < 0:
        raise ValueError(f"alpha_mag must be >= 0, got {alpha_mag}")
    return math.pi * alpha_mag / math.sqrt(math.log(10.0))


def _peak_prominences(values: np.ndarray) -> list[tuple[float, float]]:
    """(summit, prominence) per regional maximum, by descending flood fill.

    Pixels are visited from highest to lowest; a pixel with no visited
    neighbour (8-connectivity) seeds a new peak region, and when regions
    merge, the lower summit is assigned prominence summit - merge_level.
    The last surviving region's summit keeps its full height (the field is
    non-negative).  Plateaus are counted once.
    """
    nx, ny = values.shape
    flat = values.ravel()
    order = np.argsort(-flat, kind="stable")
    parent = np.full(flat.size, -1, dtype=np.int64)  # -1 = unvisited
    summit: dict[int, float] = {}
    proms: list[tuple[float, float]] = []

    def find(i: int) -> int:
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    for raw in order:
        idx = int(raw)
        level = float(flat[idx])
        i, j = divmod(idx, ny)
        roots = set()
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                a, b = i + di, j + dj
                if (di or dj) and 0 <= a < nx and 0 <= b < ny:
                    neighbour = a * ny + b
                    if parent[neighbour] != -1:
                        roots.add(find(neighbour))
        if not roots:
            parent[idx] = idx
            summit[idx] = level
            continue
        ordered = sorted(roots, key=lambda r: summit[r])
        top = ordered[-1]
        parent[idx] = top
        for r in ordered[:-1]:
            proms.append((summit[r], summit[r] - level))
            parent[r] = top
    final_root = find(int(order[0]))
    proms.append((summit[final_root], summit[final_root]))
    return proms


def count_peaks(grid: PhaseSpaceGrid, rel_threshold: float = 0.1) -> int:
    """Number of well-distinguished peaks of Q.

    A peak is a regional maximum whose topographic prominence is at least
    rel_threshold times the global maximum, i.e. it forms its own connected
    component of the super-level set {Q >= level} for every level within
    that margin below its summit.  Thresholding prominence rather than the
    raw super-level set keeps interference ridges between neighbouring
    sub-packets from silently bridging them.
    """
    if not 0.0 < rel_threshold < 1.0:
        raise ValueError(f"rel_threshold must lie in (0, 1), got {rel_threshold}")
    top = float(grid.values.max())
    if top <= 0.0:
        return 0
    floor = rel_threshold * top
    return sum(1 for _, prom in _peak_prominences(grid.values) if prom >= floor)


def write_grid_csv(grid: PhaseSpaceGrid, path) -> None:
    """One (x, p, Q) row per grid point, x-major."""
    with open(path, "w", newline="") as fh:
        fh.write("x,p,Q\n")
        for i, xv in enumerate(grid.x):
            for j, pv in enumerate(grid.p):
                fh.write(f"{xv:.12g},{pv:.12g},{grid.values[i, j]:.12g}\n")


def write_grid_matrix(grid: PhaseSpaceGrid, path) -> None:
    """Dense Q matrix (one x-row per line) preceded by a JSON header line."""
    header = {
        "window": list(grid.bounds),
        "resolution": [len(grid.x), len(grid.p)],
        "row_axis": "x",
        "col_axis": "p",
    }
    with open(path, "w", newline="") as fh:
        fh.write("# " + json.dumps(header, sort_keys=True) + "\n")
        for row in grid.values:
            fh.write(",".join(f"{v:.12g}" for v in row) + "\n")

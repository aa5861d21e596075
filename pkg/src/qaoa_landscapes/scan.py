"""2D landscape scans over (gamma, beta) and 1D sections.

Grids are endpoint-exclusive: axis point ``u`` sits at
``center - extent/2 + extent * u / res``, so a scan whose extent equals the
period tiles it exactly once. Values are stored ``[gamma index, beta index]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .exceptions import IncommensurateCoefficientsError
from .hamiltonian import (
    IsingHamiltonian,
    beta_frequency_bound,
    fundamental_gamma_period,
    gamma_frequency_bound,
    gamma_period,
)

DEFAULT_RESOLUTION = 201
BETA_PERIOD = math.pi


@dataclass(frozen=True)
class LandscapeScan:
    values: np.ndarray
    center: tuple[float, float] = (0.0, 0.0)
    extent: tuple[float, float] = (math.pi, math.pi)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or min(values.shape) < 2:
            raise ValueError(f"scan needs a 2D grid with at least 2 points per axis, got {values.shape}")
        if min(self.extent) <= 0:
            raise ValueError("scan extents must be positive")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        object.__setattr__(self, "extent", tuple(float(e) for e in self.extent))

    @property
    def resolution(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def gammas(self) -> np.ndarray:
        return axis_points(self.center[0], self.extent[0], self.values.shape[0])

    @property
    def betas(self) -> np.ndarray:
        return axis_points(self.center[1], self.extent[1], self.values.shape[1])


def axis_points(center: float, extent: float, res: int) -> np.ndarray:
    # u / res is formed first so that sublattices of finer grids match bit for bit
    return (center - extent / 2) + extent * (np.arange(res) / res)


def grid_scan(
    evaluator: Callable,
    res_gamma: int = DEFAULT_RESOLUTION,
    res_beta: int = DEFAULT_RESOLUTION,
    extent_gamma: float = math.pi,
    extent_beta: float = math.pi,
    center: tuple[float, float] = (0.0, 0.0),
) -> LandscapeScan:
    """Evaluate ``evaluator(beta, gamma)`` on the full grid in one vectorized call."""
    if res_gamma < 2 or res_beta < 2:
        raise ValueError("resolutions must be at least 2")
    if extent_gamma <= 0 or extent_beta <= 0:
        raise ValueError("extents must be positive")
    gammas = axis_points(center[0], extent_gamma, int(res_gamma))
    betas = axis_points(center[1], extent_beta, int(res_beta))
    gamma_grid, beta_grid = np.meshgrid(gammas, betas, indexing="ij")
    values = np.asarray(evaluator(beta_grid, gamma_grid), dtype=float)
    return LandscapeScan(values, center, (extent_gamma, extent_beta))


def min_odd_resolution(max_frequency: float, extent: float) -> int:
    # highest lattice index reached by max_frequency on this extent
    k_max = max_frequency * extent / (2 * math.pi)
    res = math.floor(2 * k_max + 1) + 1
    return res if res % 2 else res + 1


@dataclass(frozen=True)
class ScanParameters:
    extent_gamma: float
    extent_beta: float
    min_res_gamma: int
    min_res_beta: int


def recommended_scan_params(
    hamiltonian: IsingHamiltonian, extent_gamma: float | None = None
) -> ScanParameters:
    """One period per axis and the smallest odd alias-free resolutions.

    ``extent_gamma`` overrides the gamma period, e.g. for incommensurate
    coefficients that have none.
    """
    if extent_gamma is None:
        extent_gamma = gamma_period(hamiltonian)
    return ScanParameters(
        extent_gamma=extent_gamma,
        extent_beta=BETA_PERIOD,
        min_res_gamma=min_odd_resolution(gamma_frequency_bound(hamiltonian), extent_gamma),
        min_res_beta=min_odd_resolution(beta_frequency_bound(hamiltonian), BETA_PERIOD),
    )


def analysis_gamma_period(hamiltonian: IsingHamiltonian) -> tuple[float, bool]:
    """Gamma extent used for scans and TV sections, and whether it is a fallback.

    This is the fundamental period when one exists. Incommensurate
    coefficients and term-free Hamiltonians fall back to ``pi`` (flag True
    for the former only).
    """
    if not hamiltonian.terms:
        return math.pi, False
    try:
        return fundamental_gamma_period(hamiltonian), False
    except IncommensurateCoefficientsError:
        return math.pi, True


def line_section(
    evaluator: Callable,
    origin: Sequence[float],
    direction: Sequence[float],
    t_max: float,
    m: int = 200,
) -> np.ndarray:
    """``m + 1`` samples of C along ``origin + t * direction`` for t in [0, t_max].

    ``origin`` and ``direction`` are (gamma, beta) pairs; ``direction`` must be a unit vector.
    """
    if m < 2:
        raise ValueError("need at least m = 2 steps")
    direction = np.asarray(direction, dtype=float)
    if abs(np.linalg.norm(direction) - 1.0) > 1e-9:
        raise ValueError("direction must be a unit vector")
    t = t_max * (np.arange(m + 1) / m)
    gammas = origin[0] + t * direction[0]
    betas = origin[1] + t * direction[1]
    return np.asarray(evaluator(betas, gammas), dtype=float)


def write_scan(scan: LandscapeScan, path: str | Path, comments: Sequence[str] = ()) -> None:
    res_gamma, res_beta = scan.resolution
    lines = [f"# {c}" for c in comments]
    lines += [
        f"res_gamma={res_gamma}",
        f"res_beta={res_beta}",
        f"center={scan.center[0]:.17g},{scan.center[1]:.17g}",
        f"extent={scan.extent[0]:.17g},{scan.extent[1]:.17g}",
    ]
    lines += [",".join(f"{v:.17g}" for v in row) for row in scan.values]
    Path(path).write_text("\n".join(lines) + "\n")


def read_scan(path: str | Path) -> LandscapeScan:
    header: dict[str, str] = {}
    rows: list[list[float]] = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" in line:
            key, _, value = line.partition("=")
            header[key.strip()] = value.strip()
        else:
            rows.append([float(x) for x in line.split(",")])
    try:
        res_gamma = int(header["res_gamma"])
        res_beta = int(header["res_beta"])
        center = tuple(float(x) for x in header["center"].split(","))
        extent = tuple(float(x) for x in header["extent"].split(","))
    except KeyError as exc:
        raise ValueError(f"{path}: missing scan header field {exc}") from exc
    values = np.array(rows, dtype=float)
    if values.shape != (res_gamma, res_beta):
        raise ValueError(f"{path}: header says {res_gamma}x{res_beta}, found {values.shape}")
    return LandscapeScan(values, center, extent)


def graymap(values: np.ndarray, maxval: int = 255) -> str:
    """Plain (P2) portable graymap, min -> 0 (black), max -> ``maxval`` (white)."""
    values = np.asarray(values, dtype=float)
    low, high = values.min(), values.max()
    if high > low:
        levels = np.rint((values - low) / (high - low) * maxval).astype(int)
    else:
        levels = np.zeros(values.shape, dtype=int)
    rows, cols = levels.shape
    body = "\n".join(" ".join(str(v) for v in row) for row in levels)
    return f"P2\n{cols} {rows}\n{maxval}\n{body}\n"


def write_graymap(scan: LandscapeScan, path: str | Path) -> None:
    Path(path).write_text(graymap(scan.values))

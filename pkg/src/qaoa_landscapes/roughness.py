"""Landscape roughness metrics.

Total variation (TV) is always normalized by the value range of the data it
is computed on, which makes it invariant under ``C -> alpha C``. The Fourier
metrics are computed on DC-removed spectra.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .fourier import FourierSpectrum, remove_dc
from .scan import BETA_PERIOD, LandscapeScan

DEFAULT_DIRECTIONS = 200
DEFAULT_SAMPLES = 200
# slices whose range is below this fraction of their magnitude count as constant
_FLAT_RELATIVE = 1e-13


def _range(values: np.ndarray, axis=None) -> np.ndarray:
    return np.max(values, axis=axis) - np.min(values, axis=axis)


def tv_1d(samples: Sequence[float]) -> float:
    """Sum of absolute increments divided by the value range (0 for a flat slice)."""
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 1 or samples.size < 2:
        raise ValueError("total variation needs at least 2 samples")
    return float(_tv_rows(samples[None, :])[0])


def _tv_rows(rows: np.ndarray) -> np.ndarray:
    variation = np.abs(np.diff(rows, axis=1)).sum(axis=1)
    spread = _range(rows, axis=1)
    scale = np.max(np.abs(rows), axis=1)
    flat = spread <= _FLAT_RELATIVE * scale
    out = np.zeros(rows.shape[0])
    out[~flat] = variation[~flat] / spread[~flat]
    return out


def direction_span(
    direction: Sequence[float],
    period_gamma: float,
    period_beta: float = BETA_PERIOD,
    rule: str = "fastest",
) -> float:
    """Length of a section along the unit (gamma, beta) ``direction``.

    Each axis with a nonzero component offers the candidate ``P / |d|``, the
    length after which that coordinate has run through one full period.
    ``rule="fastest"`` takes the smallest candidate, so the section spans
    exactly one period of the faster-moving coordinate and its length stays
    below ``hypot(P_gamma, P_beta)``. ``rule="slowest"`` takes the largest,
    which grows without bound as the direction approaches an axis.
    """
    candidates = [p / abs(d) for p, d in zip((period_gamma, period_beta), direction) if d != 0]
    if not candidates:
        raise ValueError("direction must be nonzero")
    if rule == "fastest":
        return min(candidates)
    if rule == "slowest":
        return max(candidates)
    raise ValueError(f"unknown span rule {rule!r}")


def random_directions(n_dirs: int, seed: int) -> np.ndarray:
    """Unit (gamma, beta) vectors, one independent stream per direction index."""
    angles = np.array(
        [np.random.default_rng([seed, i]).uniform(0.0, 2 * math.pi) for i in range(n_dirs)]
    )
    return np.column_stack([np.cos(angles), np.sin(angles)])


@dataclass(frozen=True)
class DirectionalTV:
    mean: float
    std: float
    index: float
    values: np.ndarray


def tv_random_directions(
    evaluator: Callable,
    center: Sequence[float] = (0.0, 0.0),
    n_dirs: int = DEFAULT_DIRECTIONS,
    m: int = DEFAULT_SAMPLES,
    seed: int = 0,
    period_gamma: float = math.pi,
    period_beta: float = BETA_PERIOD,
    span_rule: str = "fastest",
) -> DirectionalTV:
    """Mean, standard deviation and sigma/mu of normalized TV over random 1D sections.

    Each section starts at ``center`` (gamma, beta) and is sampled at ``m + 1``
    points over :func:`direction_span`.
    """
    if n_dirs < 1:
        raise ValueError("need at least one direction")
    if m < 2:
        raise ValueError("need at least m = 2 steps per direction")
    directions = random_directions(n_dirs, seed)
    spans = np.array([direction_span(d, period_gamma, period_beta, span_rule) for d in directions])
    t = spans[:, None] * (np.arange(m + 1) / m)[None, :]
    gammas = center[0] + t * directions[:, 0:1]
    betas = center[1] + t * directions[:, 1:2]
    values = _tv_rows(np.asarray(evaluator(betas, gammas), dtype=float))
    mean = math.fsum(values) / n_dirs
    std = math.sqrt(math.fsum((values - mean) ** 2) / n_dirs)
    index = std / mean if mean > 0 else 0.0
    return DirectionalTV(mean, std, index, values)


def tv_grid(scan: LandscapeScan, normalize: bool = True) -> float:
    """Grid TV: mean periodic TV of all gamma-lines plus that of all beta-lines.

    With ``normalize`` the sum is divided by the scan's value range.
    """
    v = scan.values
    along_gamma = np.abs(np.roll(v, -1, axis=0) - v).sum(axis=0).mean()
    along_beta = np.abs(np.roll(v, -1, axis=1) - v).sum(axis=1).mean()
    total = float(along_gamma + along_beta)
    if not normalize:
        return total
    spread = float(_range(v))
    if spread <= _FLAT_RELATIVE * float(np.max(np.abs(v))):
        return 0.0
    return total / spread


def fourier_density(s: FourierSpectrum) -> float:
    """Numerical sparsity (l1 / l2)^2 of the DC-removed coefficients."""
    mags = remove_dc(s).magnitudes
    l2_sq = float(np.sum(mags**2))
    if l2_sq == 0.0:
        return 0.0
    return float(np.sum(mags)) ** 2 / l2_sq


def _weighted_norms(s: FourierSpectrum) -> tuple[np.ndarray, np.ndarray]:
    mags = remove_dc(s).magnitudes
    f_gamma, f_beta = s.frequency_grid()
    return mags, np.hypot(f_gamma, f_beta)


def fourier_max(s: FourierSpectrum) -> float:
    """max over frequencies of |c| * ||omega||."""
    mags, norms = _weighted_norms(s)
    return float(np.max(mags * norms, initial=0.0))


def fourier_mean(s: FourierSpectrum, relative_threshold: float = 1e-12) -> float:
    """sum |c| * ||omega|| divided by the largest frequency norm present.

    "Present" means magnitude above ``relative_threshold`` times the largest one.
    """
    mags, norms = _weighted_norms(s)
    top = mags.max(initial=0.0)
    if top == 0.0:
        return 0.0
    present = mags > relative_threshold * top
    return float(np.sum(mags * norms) / norms[present].max())


@dataclass(frozen=True)
class RoughnessReport:
    tv_mean: float
    tv_std: float
    tv_index: float
    tv_grid: float
    fourier_density: float
    fourier_max: float
    fourier_mean: float
    n_directions: int
    m_samples: int
    seed: int
    period_gamma: float
    period_beta: float
    span_rule: str = "fastest"

    def to_text(self, extra: dict | None = None) -> str:
        items = dict(extra or {})
        items.update(asdict(self))
        return "".join(f"{k}={_format(v)}\n" for k, v in items.items())

    @classmethod
    def from_text(cls, text: str) -> "RoughnessReport":
        items = {}
        for line in text.splitlines():
            if "=" in line and not line.startswith("#"):
                key, _, value = line.partition("=")
                items[key.strip()] = value.strip()
        kwargs = {}
        casts = {"int": int, "float": float, "str": str}
        for name, field_type in cls.__annotations__.items():
            if name in items:
                kwargs[name] = casts[field_type](items[name])
        return cls(**kwargs)


def _format(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def roughness_report(
    evaluator: Callable,
    scan: LandscapeScan,
    fourier: FourierSpectrum,
    n_dirs: int = DEFAULT_DIRECTIONS,
    m: int = DEFAULT_SAMPLES,
    seed: int = 0,
    period_gamma: float = math.pi,
    period_beta: float = BETA_PERIOD,
    center: Sequence[float] = (0.0, 0.0),
    span_rule: str = "fastest",
) -> RoughnessReport:
    tv = tv_random_directions(evaluator, center, n_dirs, m, seed, period_gamma, period_beta, span_rule)
    return RoughnessReport(
        tv_mean=tv.mean,
        tv_std=tv.std,
        tv_index=tv.index,
        tv_grid=tv_grid(scan),
        fourier_density=fourier_density(fourier),
        fourier_max=fourier_max(fourier),
        fourier_mean=fourier_mean(fourier),
        n_directions=n_dirs,
        m_samples=m,
        seed=seed,
        period_gamma=period_gamma,
        period_beta=period_beta,
        span_rule=span_rule,
    )


def write_report(report: RoughnessReport, path: str | Path, extra: dict | None = None) -> None:
    Path(path).write_text(report.to_text(extra))


def read_report(path: str | Path) -> RoughnessReport:
    return RoughnessReport.from_text(Path(path).read_text())


def analyze_hamiltonian(
    hamiltonian,
    method: str = "auto",
    res: int | None = None,
    n_dirs: int = DEFAULT_DIRECTIONS,
    m: int = DEFAULT_SAMPLES,
    seed: int = 0,
    span_rule: str = "fastest",
    extent_gamma: float | None = None,
) -> RoughnessReport:
    """Scan one gamma period by pi, transform, and compute every roughness metric.

    ``res`` defaults to the larger of 201 and the alias-free minimum. The
    gamma extent defaults to :func:`analysis_gamma_period`; TV sections use
    the same period.
    """
    from .energy import EnergyEvaluator
    from .fourier import spectrum
    from .scan import DEFAULT_RESOLUTION, analysis_gamma_period, grid_scan, recommended_scan_params

    if extent_gamma is None:
        extent_gamma, _ = analysis_gamma_period(hamiltonian)
    params = recommended_scan_params(hamiltonian, extent_gamma)
    if res is None:
        res_gamma = max(DEFAULT_RESOLUTION, params.min_res_gamma)
        res_beta = max(DEFAULT_RESOLUTION, params.min_res_beta)
    else:
        res_gamma = res_beta = res
    evaluator = EnergyEvaluator(hamiltonian, method)
    scan = grid_scan(evaluator, res_gamma, res_beta, extent_gamma, BETA_PERIOD)
    return roughness_report(
        evaluator, scan, spectrum(scan), n_dirs, m, seed,
        period_gamma=extent_gamma, span_rule=span_rule,
    )


CONCENTRATION_SIZES = (8, 12, 16, 20)
CONCENTRATION_WEIGHTS = (-10.0, 10.0)


def graph_seed(master_seed: int, n: int, index: int) -> int:
    """Deterministic per-instance seed for graph ``index`` of size ``n``."""
    return master_seed * 1_000_000 + n * 1_000 + index


@dataclass(frozen=True)
class SizeSummary:
    n: int
    tv_mean: float
    tv_std: float
    fd_mean: float
    fd_std: float
    reports: tuple[RoughnessReport, ...]


def concentration_study(
    sizes: Sequence[int] = CONCENTRATION_SIZES,
    n_seeds: int = 20,
    seed: int = 0,
    weight_range: tuple[float, float] = CONCENTRATION_WEIGHTS,
    degree: int = 3,
    res: int = 201,
    n_dirs: int = DEFAULT_DIRECTIONS,
    m: int = DEFAULT_SAMPLES,
    span_rule: str = "fastest",
) -> list[SizeSummary]:
    """Roughness of weighted random regular MaxCut instances, summarized per size.

    Every instance is scanned over pi by pi with the closed-form evaluator;
    random real weights have no common period, so TV sections use pi as well.
    """
    from .hamiltonian import maxcut_hamiltonian, random_regular_graph

    out = []
    for n in sizes:
        reports = []
        for s in range(n_seeds):
            graph = random_regular_graph(n, degree, weight_range, seed=graph_seed(seed, n, s))
            reports.append(
                analyze_hamiltonian(
                    maxcut_hamiltonian(graph), "closed_form", res, n_dirs, m,
                    seed=seed, span_rule=span_rule, extent_gamma=math.pi,
                )
            )
        tv = np.array([r.tv_mean for r in reports])
        fd = np.array([r.fourier_density for r in reports])
        out.append(SizeSummary(n, float(tv.mean()), float(tv.std()), float(fd.mean()), float(fd.std()), tuple(reports)))
    return out

"""Bounded quasi-Newton minimization of C(beta, gamma) and multistart benchmarks.

Parameters are ordered ``(beta, gamma)`` throughout this module.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .scan import grid_scan

GRADIENT_STEP = 1e-6
GRADIENT_TOLERANCE = 1e-8
ARMIJO_C1 = 1e-4
MAX_BACKTRACKS = 60
SUCCESS_TOLERANCE = 1e-6
CLUSTER_TOLERANCE = 1e-4
DEFAULT_BOUNDS = ((-math.pi, math.pi), (-math.pi, math.pi))
DEFAULT_INIT_BOX = (-0.9 * math.pi, 0.9 * math.pi)


@dataclass
class OptimizationRun:
    init_params: tuple[float, float]
    final_params: tuple[float, float]
    init_energy: float
    final_energy: float
    n_evaluations: int
    n_iterations: int
    converged: bool
    failed: bool = False
    trace: list[float] = field(default_factory=list, repr=False)


class _Objective:
    def __init__(self, evaluator: Callable):
        self.evaluator = evaluator
        self.n_evaluations = 0

    def __call__(self, x: np.ndarray) -> float:
        self.n_evaluations += 1
        return float(self.evaluator(x[0], x[1]))

    def gradient(self, x: np.ndarray, step: float = GRADIENT_STEP) -> np.ndarray:
        g = np.empty(2)
        for i in range(2):
            e = np.zeros(2)
            e[i] = step
            g[i] = (self(x + e) - self(x - e)) / (2 * step)
        return g


def _projected_gradient(x, g, lower, upper):
    pg = g.copy()
    pg[(x <= lower) & (g > 0)] = 0.0
    pg[(x >= upper) & (g < 0)] = 0.0
    return pg


def minimize(
    evaluator: Callable,
    init: Sequence[float],
    bounds: Sequence[tuple[float, float]] = DEFAULT_BOUNDS,
    max_iters: int = 200,
    gtol: float = GRADIENT_TOLERANCE,
) -> OptimizationRun:
    """BFGS with central-difference gradients, Armijo backtracking and box projection.

    Every accepted step satisfies the Armijo condition, so the recorded
    energy trace never increases. ``converged`` is set only when the
    projected gradient norm drops below ``gtol``; a line search that cannot
    make progress stops the run early without it.
    """
    lower = np.array([b[0] for b in bounds], dtype=float)
    upper = np.array([b[1] for b in bounds], dtype=float)
    x = np.asarray(init, dtype=float)
    if np.any(x < lower) or np.any(x > upper):
        raise ValueError(f"initial point {tuple(x)} outside bounds {tuple(bounds)}")
    objective = _Objective(evaluator)
    fx = objective(x)
    init_energy = fx
    trace = [fx]

    def finish(iterations, converged, failed=False):
        return OptimizationRun(
            init_params=tuple(float(v) for v in init),
            final_params=(float(x[0]), float(x[1])),
            init_energy=init_energy,
            final_energy=fx,
            n_evaluations=objective.n_evaluations,
            n_iterations=iterations,
            converged=converged,
            failed=failed,
            trace=trace,
        )

    if not math.isfinite(fx):
        return finish(0, False, failed=True)
    g = objective.gradient(x)
    inv_hessian = np.eye(2)
    for iteration in range(max_iters):
        if not np.all(np.isfinite(g)):
            return finish(iteration, False, failed=True)
        pg = _projected_gradient(x, g, lower, upper)
        if np.linalg.norm(pg) < gtol:
            return finish(iteration, True)
        # coordinates pinned at a bound are frozen; curvature acts on the free ones
        free = pg != 0
        direction = np.zeros(2)
        direction[free] = -inv_hessian[np.ix_(free, free)] @ pg[free]
        if direction @ pg >= 0:
            inv_hessian = np.eye(2)
            direction = -pg
        accepted = False
        for attempt in range(2):
            t = 1.0
            for _ in range(MAX_BACKTRACKS):
                candidate = np.clip(x + t * direction, lower, upper)
                step = candidate - x
                if not np.any(step):
                    break
                f_new = objective(candidate)
                if not math.isfinite(f_new):
                    return finish(iteration, False, failed=True)
                if f_new <= fx + ARMIJO_C1 * (g @ step) and f_new <= fx:
                    accepted = True
                    break
                t *= 0.5
            if accepted or attempt:
                break
            # quasi-Newton direction failed; retry once along steepest descent
            inv_hessian = np.eye(2)
            direction = -pg
        if not accepted:
            return finish(iteration, False)
        g_new = objective.gradient(candidate)
        s = candidate - x
        y = g_new - g
        sy = s @ y
        if sy > 1e-12:
            rho = 1.0 / sy
            eye = np.eye(2)
            inv_hessian = (eye - rho * np.outer(s, y)) @ inv_hessian @ (eye - rho * np.outer(y, s)) + rho * np.outer(s, s)
        x, fx, g = candidate, f_new, g_new
        trace.append(fx)
    return finish(max_iters, False)


@dataclass
class BenchmarkResult:
    runs: list[OptimizationRun]
    global_min_estimate: float
    success_count: int
    histogram_counts: list[int]
    histogram_edges: list[float]
    seed: int
    success_tolerance: float = SUCCESS_TOLERANCE

    @property
    def final_energies(self) -> np.ndarray:
        return np.array([r.final_energy for r in self.runs])

    def n_clusters(self, tolerance: float = CLUSTER_TOLERANCE) -> int:
        return count_clusters(self.final_energies, tolerance)

    def to_dict(self) -> dict:
        runs = []
        for run in self.runs:
            record = asdict(run)
            record.pop("trace")
            runs.append(record)
        return {
            "seed": self.seed,
            "global_min_estimate": self.global_min_estimate,
            "success_tolerance": self.success_tolerance,
            "success_count": self.success_count,
            "n_clusters": self.n_clusters(),
            "histogram": {"counts": self.histogram_counts, "edges": self.histogram_edges},
            "runs": runs,
        }


def count_clusters(values: Sequence[float], tolerance: float = CLUSTER_TOLERANCE) -> int:
    """Number of groups after chaining sorted values whose gaps are <= ``tolerance``."""
    values = np.sort(np.asarray(values, dtype=float))
    if values.size == 0:
        return 0
    return 1 + int(np.count_nonzero(np.diff(values) > tolerance))


def is_success(energy: float, global_min: float, tolerance: float = SUCCESS_TOLERANCE) -> bool:
    return energy <= global_min + tolerance * max(abs(global_min), 1e-300)


def multistart(
    evaluator: Callable,
    n_runs: int = 100,
    init_box: tuple[float, float] = DEFAULT_INIT_BOX,
    seed: int = 0,
    bounds: Sequence[tuple[float, float]] = DEFAULT_BOUNDS,
    max_iters: int = 200,
    grid_resolution: int = 201,
    n_bins: int = 50,
) -> BenchmarkResult:
    """Independent minimizations from uniform random starts in ``init_box`` squared.

    Run ``i`` draws its start from its own stream seeded with ``(seed, i)``.
    The reference minimum is the lowest of a ``grid_resolution``-square scan
    over ``bounds`` and all run results.
    """
    runs = []
    for i in range(n_runs):
        init = np.random.default_rng([seed, i]).uniform(init_box[0], init_box[1], size=2)
        runs.append(minimize(evaluator, init, bounds, max_iters))
    (b_lo, b_hi), (g_lo, g_hi) = bounds
    scan = grid_scan(
        evaluator,
        res_gamma=grid_resolution,
        res_beta=grid_resolution,
        extent_gamma=g_hi - g_lo,
        extent_beta=b_hi - b_lo,
        center=((g_lo + g_hi) / 2, (b_lo + b_hi) / 2),
    )
    finals = np.array([r.final_energy for r in runs if not r.failed])
    global_min = float(min(scan.values.min(), finals.min(initial=np.inf)))
    success = sum(1 for r in runs if not r.failed and is_success(r.final_energy, global_min))
    if finals.size:
        counts, edges = np.histogram(finals, bins=n_bins)
    else:
        counts, edges = np.zeros(n_bins, dtype=int), np.linspace(0, 1, n_bins + 1)
    return BenchmarkResult(
        runs=runs,
        global_min_estimate=global_min,
        success_count=success,
        histogram_counts=counts.tolist(),
        histogram_edges=edges.tolist(),
        seed=seed,
    )


def write_benchmark(result: BenchmarkResult, path: str | Path, config: dict | None = None) -> None:
    data = {"config": config or {}}
    data.update(result.to_dict())
    Path(path).write_text(json.dumps(data, indent=2) + "\n")

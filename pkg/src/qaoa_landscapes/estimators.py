"""scikit-learn style wrappers around the landscape pipeline.

* :class:`QAOACostModel` -- ``predict`` maps rows ``(beta, gamma)`` to energies.
* :class:`LandscapeFourierTransformer` -- 2D scan grid to Fourier coefficients.
* :class:`RoughnessAnalyzer` -- list of Hamiltonians to a roughness feature matrix.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .energy import EnergyEvaluator
from .exceptions import HamiltonianError
from .fourier import FourierSpectrum, half_spectrum, remove_dc, spectrum
from .hamiltonian import IsingHamiltonian, read_hamiltonian
from .library import resolve_builtin
from .roughness import DEFAULT_DIRECTIONS, DEFAULT_SAMPLES, analyze_hamiltonian
from .scan import LandscapeScan, analysis_gamma_period

ROUGHNESS_FEATURES = (
    "tv_mean",
    "tv_std",
    "tv_index",
    "tv_grid",
    "fourier_density",
    "fourier_max",
    "fourier_mean",
)


def check_hamiltonian(value) -> IsingHamiltonian:
    """Accept a Hamiltonian, its dict form, a builtin name or a JSON file path."""
    if isinstance(value, IsingHamiltonian):
        return value
    if isinstance(value, dict):
        return IsingHamiltonian.from_dict(value)
    if isinstance(value, (str, Path)):
        path = Path(value)
        if path.is_file():
            return read_hamiltonian(path)
        return resolve_builtin(str(value))
    raise HamiltonianError(f"cannot interpret {type(value).__name__} as a Hamiltonian")


def check_parameters(X) -> np.ndarray:
    """Validate an ``(n_samples, 2)`` array of ``(beta, gamma)`` rows."""
    X = check_array(X, dtype=float, ensure_all_finite=True)
    if X.shape[1] != 2:
        raise ValueError(f"expected columns (beta, gamma), got {X.shape[1]} columns")
    return X


def check_grid(X) -> np.ndarray:
    X = check_array(X, dtype=float, ensure_min_samples=2, ensure_min_features=2)
    return X


class QAOACostModel(BaseEstimator):
    """Depth-1 QAOA energy as a fixed (training-free) regressor.

    ``fit`` ignores its data and only binds the Hamiltonian.
    """

    def __init__(self, hamiltonian="H1", method="auto"):
        self.hamiltonian = hamiltonian
        self.method = method

    def fit(self, X=None, y=None):
        h = check_hamiltonian(self.hamiltonian)
        self.hamiltonian_ = h
        self.evaluator_ = EnergyEvaluator(h, self.method)
        self.gamma_period_, self.period_is_fallback_ = analysis_gamma_period(h)
        self.n_features_in_ = 2
        return self

    def predict(self, X):
        check_is_fitted(self, "evaluator_")
        X = check_parameters(X)
        return np.asarray(self.evaluator_(X[:, 0], X[:, 1]), dtype=float)


class LandscapeFourierTransformer(TransformerMixin, BaseEstimator):
    """Normalized 2D FFT of a ``[gamma, beta]`` value grid.

    ``transform`` returns the complex coefficient array (``fftshift`` order);
    the full :class:`FourierSpectrum` of the last call is kept in ``spectrum_``.
    """

    def __init__(self, extent=(math.pi, math.pi), remove_dc=True, half=False):
        self.extent = extent
        self.remove_dc = remove_dc
        self.half = half

    def fit(self, X, y=None):
        grid = check_grid(X.values if isinstance(X, LandscapeScan) else X)
        self.resolution_ = grid.shape
        return self

    def _spectrum(self, X) -> FourierSpectrum:
        if isinstance(X, LandscapeScan):
            scan = X
        else:
            scan = LandscapeScan(check_grid(X), extent=tuple(self.extent))
        if scan.resolution != tuple(self.resolution_):
            raise ValueError(f"fitted on {self.resolution_} grids, got {scan.resolution}")
        s = spectrum(scan)
        if self.remove_dc:
            s = remove_dc(s)
        if self.half:
            s = half_spectrum(s)
        return s

    def transform(self, X):
        check_is_fitted(self, "resolution_")
        self.spectrum_ = self._spectrum(X)
        return self.spectrum_.coefficients


class RoughnessAnalyzer(TransformerMixin, BaseEstimator):
    """Map each Hamiltonian in ``X`` to the row of :data:`ROUGHNESS_FEATURES`.

    Items of ``X`` may be anything :func:`check_hamiltonian` accepts.
    """

    def __init__(
        self,
        method="auto",
        res=None,
        n_directions=DEFAULT_DIRECTIONS,
        m_samples=DEFAULT_SAMPLES,
        seed=0,
        span_rule="fastest",
    ):
        self.method = method
        self.res = res
        self.n_directions = n_directions
        self.m_samples = m_samples
        self.seed = seed
        self.span_rule = span_rule

    def fit(self, X=None, y=None):
        if self.res is not None and int(self.res) < 2:
            raise ValueError("res must be at least 2")
        if self.span_rule not in ("fastest", "slowest"):
            raise ValueError(f"unknown span rule {self.span_rule!r}")
        self.n_features_out_ = len(ROUGHNESS_FEATURES)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_out_")
        rows = []
        for item in X:
            report = analyze_hamiltonian(
                check_hamiltonian(item),
                method=self.method,
                res=self.res,
                n_dirs=self.n_directions,
                m=self.m_samples,
                seed=self.seed,
                span_rule=self.span_rule,
            )
            rows.append([getattr(report, name) for name in ROUGHNESS_FEATURES])
        return np.array(rows, dtype=float).reshape(-1, len(ROUGHNESS_FEATURES))

    def get_feature_names_out(self, input_features=None):
        return np.array(ROUGHNESS_FEATURES, dtype=object)

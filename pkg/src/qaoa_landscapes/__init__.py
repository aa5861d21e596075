"""Cost and Fourier landscapes of depth-1 QAOA on Ising Hamiltonians."""

from .energy import EnergyEvaluator, closed_form_energy, statevector_energy, toy_energy
from .estimators import LandscapeFourierTransformer, QAOACostModel, RoughnessAnalyzer, check_hamiltonian
from .exceptions import (
    EnumerationLimitError,
    GraphGenerationError,
    HamiltonianError,
    IncommensurateCoefficientsError,
    LandscapeError,
    UnsupportedOrderError,
)
from .fourier import FourierSpectrum, peaks, predict_toy_frequencies, spectrum
from .hamiltonian import (
    IsingHamiltonian,
    PauliZTerm,
    WeightedGraph,
    build_hamiltonian,
    gamma_period,
    maxcut_hamiltonian,
    random_regular_graph,
)
from .optimize import BenchmarkResult, OptimizationRun, minimize, multistart
from .roughness import RoughnessReport, fourier_density, tv_grid, tv_random_directions
from .scan import LandscapeScan, grid_scan, recommended_scan_params

__version__ = "0.1.0"

__all__ = [
    "BenchmarkResult",
    "EnergyEvaluator",
    "EnumerationLimitError",
    "FourierSpectrum",
    "GraphGenerationError",
    "HamiltonianError",
    "IncommensurateCoefficientsError",
    "IsingHamiltonian",
    "LandscapeError",
    "LandscapeFourierTransformer",
    "LandscapeScan",
    "OptimizationRun",
    "PauliZTerm",
    "QAOACostModel",
    "RoughnessAnalyzer",
    "RoughnessReport",
    "UnsupportedOrderError",
    "WeightedGraph",
    "build_hamiltonian",
    "check_hamiltonian",
    "closed_form_energy",
    "fourier_density",
    "gamma_period",
    "grid_scan",
    "maxcut_hamiltonian",
    "minimize",
    "multistart",
    "peaks",
    "predict_toy_frequencies",
    "random_regular_graph",
    "recommended_scan_params",
    "spectrum",
    "statevector_energy",
    "toy_energy",
    "tv_grid",
    "tv_random_directions",
]

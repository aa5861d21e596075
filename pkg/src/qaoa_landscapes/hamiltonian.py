"""Diagonal k-body Ising Hamiltonians and their analytic spectral properties.

A Hamiltonian is a weighted sum of Pauli-Z strings. Identity terms are kept
apart as a scalar ``offset``; they shift energies but never contribute
frequencies.

Bitstring convention: amplitude index ``x`` encodes qubit ``i`` in bit ``i``
(qubit 0 is the least significant bit). A bit value of 1 gives the Z
eigenvalue -1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .exceptions import (
    EnumerationLimitError,
    GraphGenerationError,
    HamiltonianError,
    IncommensurateCoefficientsError,
)

MAX_ENUMERATION_QUBITS = 24
FREQUENCY_TOLERANCE = 1e-9
GCD_MAX_DENOMINATOR = 10_000
GCD_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PauliZTerm:
    """Product of Z operators on ``qubits`` scaled by ``coefficient``."""

    qubits: tuple[int, ...]
    coefficient: float

    def __post_init__(self):
        qubits = tuple(int(q) for q in self.qubits)
        if len(set(qubits)) != len(qubits):
            raise HamiltonianError(f"repeated qubit index in term {qubits}")
        if any(q < 0 for q in qubits):
            raise HamiltonianError(f"negative qubit index in term {qubits}")
        coefficient = float(self.coefficient)
        if not math.isfinite(coefficient):
            raise HamiltonianError(f"non-finite coefficient {self.coefficient!r}")
        object.__setattr__(self, "qubits", tuple(sorted(qubits)))
        object.__setattr__(self, "coefficient", coefficient)

    @property
    def weight(self) -> int:
        return len(self.qubits)


@dataclass(frozen=True)
class IsingHamiltonian:
    """Canonical diagonal Hamiltonian.

    Construction merges terms acting on the same qubit set, drops exact
    zeros and moves identity terms into ``offset``. Terms are stored sorted
    by (weight, qubits), so equal Hamiltonians compare equal.
    """

    n_qubits: int
    terms: tuple[PauliZTerm, ...] = ()
    offset: float = 0.0

    def __post_init__(self):
        n = int(self.n_qubits)
        if n < 0:
            raise HamiltonianError("n_qubits must be non-negative")
        merged: dict[tuple[int, ...], float] = {}
        offset = float(self.offset)
        for term in self.terms:
            if not isinstance(term, PauliZTerm):
                term = PauliZTerm(*term)
            if any(q >= n for q in term.qubits):
                raise HamiltonianError(
                    f"qubit index out of range in {term.qubits} for n_qubits={n}"
                )
            if not term.qubits:
                offset += term.coefficient
                continue
            merged[term.qubits] = merged.get(term.qubits, 0.0) + term.coefficient
        terms = tuple(
            PauliZTerm(q, c)
            for q, c in sorted(merged.items(), key=lambda kv: (len(kv[0]), kv[0]))
            if c != 0.0
        )
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "offset", offset)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([t.coefficient for t in self.terms], dtype=float)

    def __add__(self, other: "IsingHamiltonian") -> "IsingHamiltonian":
        return IsingHamiltonian(
            max(self.n_qubits, other.n_qubits),
            self.terms + other.terms,
            self.offset + other.offset,
        )

    def scaled(self, factor: float) -> "IsingHamiltonian":
        return IsingHamiltonian(
            self.n_qubits,
            tuple(PauliZTerm(t.qubits, factor * t.coefficient) for t in self.terms),
            factor * self.offset,
        )

    def with_terms(self, extra: Iterable[PauliZTerm]) -> "IsingHamiltonian":
        return IsingHamiltonian(self.n_qubits, self.terms + tuple(extra), self.offset)

    def without_offset(self) -> "IsingHamiltonian":
        return IsingHamiltonian(self.n_qubits, self.terms)

    def to_dict(self) -> dict:
        terms = [{"qubits": list(t.qubits), "coeff": t.coefficient} for t in self.terms]
        if self.offset:
            terms.insert(0, {"qubits": [], "coeff": self.offset})
        return {"n_qubits": self.n_qubits, "terms": terms}

    @classmethod
    def from_dict(cls, data: dict) -> "IsingHamiltonian":
        try:
            n_qubits = data["n_qubits"]
            raw = [(term["qubits"], term["coeff"]) for term in data["terms"]]
        except (KeyError, TypeError) as exc:
            raise HamiltonianError(f"malformed Hamiltonian document: {exc}") from exc
        if not isinstance(n_qubits, int) or isinstance(n_qubits, bool):
            raise HamiltonianError("n_qubits must be an integer")
        return build_hamiltonian(n_qubits, raw)

    def __str__(self) -> str:
        parts = [f"{t.coefficient:+g}*" + "".join(f"Z{q}" for q in t.qubits) for t in self.terms]
        if self.offset:
            parts.insert(0, f"{self.offset:+g}")
        return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected simple graph with real edge weights; edges stored as (i, j, w), i < j."""

    n_nodes: int
    edges: tuple[tuple[int, int, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        n = int(self.n_nodes)
        seen = set()
        edges = []
        for edge in self.edges:
            try:
                i, j, w = edge
            except (TypeError, ValueError) as exc:
                raise HamiltonianError(f"edge must be an (i, j, weight) triple: {edge!r}") from exc
            i, j, w = int(i), int(j), float(w)
            if i == j:
                raise HamiltonianError(f"self-loop on node {i}")
            i, j = min(i, j), max(i, j)
            if i < 0 or j >= n:
                raise HamiltonianError(f"edge ({i}, {j}) outside 0..{n - 1}")
            if (i, j) in seen:
                raise HamiltonianError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
            edges.append((i, j, w))
        object.__setattr__(self, "n_nodes", n)
        object.__setattr__(self, "edges", tuple(edges))

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_nodes, dtype=int)
        for i, j, _ in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def to_dict(self) -> dict:
        return {"n_nodes": self.n_nodes, "edges": [[i, j, w] for i, j, w in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "WeightedGraph":
        try:
            return cls(data["n_nodes"], tuple(tuple(e) for e in data["edges"]))
        except (KeyError, TypeError) as exc:
            raise HamiltonianError(f"malformed graph document: {exc}") from exc


def build_hamiltonian(
    n_qubits: int, raw_terms: Iterable[tuple[Sequence[int], float]]
) -> IsingHamiltonian:
    """Build a canonical Hamiltonian from ``(qubits, coefficient)`` pairs.

    >>> build_hamiltonian(2, [((0,), 1.0), ((0,), 2.0)]).terms
    (PauliZTerm(qubits=(0,), coefficient=3.0),)
    """
    return IsingHamiltonian(n_qubits, tuple(PauliZTerm(tuple(q), c) for q, c in raw_terms))


def max_pauli_weight(hamiltonian: IsingHamiltonian) -> int:
    return max((t.weight for t in hamiltonian.terms), default=0)


def beta_frequency_bound(hamiltonian: IsingHamiltonian) -> int:
    """Largest |f_beta| that can appear for depth-1 QAOA: twice the max term weight."""
    return 2 * max_pauli_weight(hamiltonian)


def gamma_frequency_bound(hamiltonian: IsingHamiltonian) -> float:
    """Upper bound on |f_gamma|: twice the sum of absolute coefficients."""
    return 2.0 * float(np.sum(np.abs(hamiltonian.coefficients)))


def _rational(value: float, tolerance: float, max_denominator: int) -> Fraction:
    frac = Fraction(value).limit_denominator(max_denominator)
    if abs(float(frac) - value) > tolerance * max(1.0, abs(value)):
        raise IncommensurateCoefficientsError(
            f"coefficient {value!r} has no rational approximation with "
            f"denominator <= {max_denominator}"
        )
    return frac


def rational_gcd(
    values: Iterable[float],
    tolerance: float = GCD_TOLERANCE,
    max_denominator: int = GCD_MAX_DENOMINATOR,
) -> float:
    """GCD of real numbers after rational approximation (0 if all are zero)."""
    fracs = [_rational(abs(float(v)), tolerance, max_denominator) for v in values]
    fracs = [f for f in fracs if f != 0]
    if not fracs:
        return 0.0
    denominator = reduce(math.lcm, (f.denominator for f in fracs))
    numerators = [f.numerator * (denominator // f.denominator) for f in fracs]
    return reduce(math.gcd, numerators) / denominator


def gamma_period(hamiltonian: IsingHamiltonian, tolerance: float = GCD_TOLERANCE) -> float:
    """A gamma period of the cost function, ``pi / gcd(|c_k|)``.

    This is an upper bound on the fundamental period; see
    :func:`fundamental_gamma_period` for the tight value.
    """
    if not hamiltonian.terms:
        raise HamiltonianError("gamma period undefined for a Hamiltonian without Z terms")
    return math.pi / rational_gcd(hamiltonian.coefficients, tolerance)


def fundamental_gamma_period(
    hamiltonian: IsingHamiltonian, tolerance: float = GCD_TOLERANCE
) -> float:
    """Smallest gamma period ``2 pi / gcd(eigenvalue differences)``.

    Falls back to :func:`gamma_period` when the spectrum is too large to enumerate.
    """
    if not hamiltonian.terms:
        raise HamiltonianError("gamma period undefined for a Hamiltonian without Z terms")
    if hamiltonian.n_qubits > MAX_ENUMERATION_QUBITS:
        return gamma_period(hamiltonian, tolerance)
    eigenvalues = np.unique(diagonal(hamiltonian.without_offset()))
    differences = eigenvalues - eigenvalues[0]
    return 2.0 * math.pi / rational_gcd(differences, tolerance)


def _z_string(qubits: tuple[int, ...], index: np.ndarray) -> np.ndarray:
    parity = np.zeros_like(index)
    for q in qubits:
        parity ^= (index >> q) & 1
    return 1.0 - 2.0 * parity


def diagonal(hamiltonian: IsingHamiltonian) -> np.ndarray:
    """Energies of all ``2**n`` computational basis states, offset included."""
    n = hamiltonian.n_qubits
    if n > MAX_ENUMERATION_QUBITS:
        raise EnumerationLimitError(
            f"{n} qubits exceeds the enumeration limit of {MAX_ENUMERATION_QUBITS}"
        )
    index = np.arange(2**n, dtype=np.int64)
    energies = np.full(2**n, hamiltonian.offset, dtype=float)
    for term in hamiltonian.terms:
        energies += term.coefficient * _z_string(term.qubits, index)
    return energies


def eigenvalue_per_bitstring(hamiltonian: IsingHamiltonian, z: str | Sequence[int]) -> float:
    """Energy of one basis state. ``z[i]`` is the bit of qubit ``i``."""
    bits = [int(b) for b in z]
    if len(bits) != hamiltonian.n_qubits:
        raise HamiltonianError(
            f"bitstring of length {len(bits)} for {hamiltonian.n_qubits} qubits"
        )
    if any(b not in (0, 1) for b in bits):
        raise HamiltonianError(f"bitstring must contain only 0/1, got {z!r}")
    total = hamiltonian.offset
    for term in hamiltonian.terms:
        sign = -1 if sum(bits[q] for q in term.qubits) % 2 else 1
        total += sign * term.coefficient
    return total


def _dedupe_sorted(values: np.ndarray, tolerance: float) -> np.ndarray:
    if values.size == 0:
        return values
    values = np.sort(values)
    keep = np.concatenate(([True], np.diff(values) > tolerance))
    return values[keep]


def gamma_frequency_set(
    hamiltonian: IsingHamiltonian, tolerance: float = FREQUENCY_TOLERANCE
) -> np.ndarray:
    """Sorted array of all distinct eigenvalue differences (the possible f_gamma)."""
    eigenvalues = _dedupe_sorted(diagonal(hamiltonian), tolerance)
    differences = (eigenvalues[:, None] - eigenvalues[None, :]).ravel()
    return _dedupe_sorted(differences, tolerance)


def maxcut_hamiltonian(graph: WeightedGraph) -> IsingHamiltonian:
    """MaxCut cost operator with the identity offset removed: ``-w_ij/2 Z_i Z_j`` per edge."""
    return build_hamiltonian(graph.n_nodes, [((i, j), -0.5 * w) for i, j, w in graph.edges])


def random_regular_graph(
    n: int,
    degree: int,
    weight_range: tuple[float, float] = (1.0, 1.0),
    seed: int | None = 0,
    max_tries: int = 10_000,
) -> WeightedGraph:
    """Uniform simple ``degree``-regular graph from the configuration model.

    Stubs are shuffled and paired; any pairing with a self-loop or a repeated
    edge is rejected whole and redrawn. Edge weights are uniform in
    ``weight_range`` and drawn after the topology, in edge order.
    """
    if degree < 0 or degree >= n:
        raise GraphGenerationError(f"need 0 <= degree < n, got degree={degree}, n={n}")
    if (n * degree) % 2:
        raise GraphGenerationError(f"n * degree must be even, got {n} * {degree}")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), degree)
    for _ in range(max_tries):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        pairs.sort(axis=1)
        if np.any(pairs[:, 0] == pairs[:, 1]):
            continue
        keys = {(int(i), int(j)) for i, j in pairs}
        if len(keys) != len(pairs):
            continue
        edges = sorted(keys)
        low, high = weight_range
        weights = rng.uniform(low, high, size=len(edges))
        return WeightedGraph(n, tuple((i, j, float(w)) for (i, j), w in zip(edges, weights)))
    raise GraphGenerationError(f"no simple {degree}-regular graph on {n} nodes after {max_tries} tries")


def interpolation_sequence(
    base: IsingHamiltonian, added_terms: Sequence[PauliZTerm]
) -> list[IsingHamiltonian]:
    """``[base, base + t1, base + t1 + t2, ...]``."""
    return [base.with_terms(added_terms[:j]) for j in range(len(added_terms) + 1)]


def all_k_body_terms(n_qubits: int, k: int, coefficient: float = 1.0) -> list[PauliZTerm]:
    """Every k-body Z string on ``n_qubits`` in lexicographic qubit order."""
    return [PauliZTerm(q, coefficient) for q in combinations(range(n_qubits), k)]


def read_hamiltonian(path: str | Path) -> IsingHamiltonian:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise HamiltonianError(f"{path}: not a valid Hamiltonian document ({exc})") from exc
    return IsingHamiltonian.from_dict(data)


def write_hamiltonian(hamiltonian: IsingHamiltonian, path: str | Path) -> None:
    Path(path).write_text(json.dumps(hamiltonian.to_dict(), indent=2) + "\n")


def read_graph(path: str | Path) -> WeightedGraph:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise HamiltonianError(f"{path}: not a valid graph document ({exc})") from exc
    return WeightedGraph.from_dict(data)


def write_graph(graph: WeightedGraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(graph.to_dict(), indent=2) + "\n")

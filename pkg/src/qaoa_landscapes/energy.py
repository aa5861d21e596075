"""Depth-1 QAOA energy C(beta, gamma) for diagonal Ising Hamiltonians.

Three evaluators are provided:

* ``statevector`` -- exact simulation, any term weight, up to 24 qubits;
* ``closed_form`` -- analytic expectation values for 1- and 2-body terms;
* ``toy`` -- the two-qubit formula for ``a Z0 + b Z1 + c Z0 Z1``.

The circuit is ``exp(-i beta sum_i X_i) exp(-i gamma H) |+>^n``. All
evaluators broadcast over array-valued ``beta`` and ``gamma`` and add the
Hamiltonian's identity offset to their result.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import EnumerationLimitError, HamiltonianError, UnsupportedOrderError
from .hamiltonian import MAX_ENUMERATION_QUBITS, IsingHamiltonian, diagonal, max_pauli_weight

METHODS = ("statevector", "closed_form", "toy")

# amplitudes held in memory at once by the batched simulator
_MAX_BATCH_AMPLITUDES = 1 << 22


def _apply_mixer(psi: np.ndarray, n_qubits: int, cos_b: np.ndarray, sin_b: np.ndarray) -> np.ndarray:
    """Apply exp(-i beta X) to every qubit of a batch of states shaped (P, 2**n)."""
    batch = psi.shape[0]
    psi = psi.reshape((batch,) + (2,) * n_qubits)
    shape = (batch,) + (1,) * n_qubits
    c = cos_b.reshape(shape)
    s = -1j * sin_b.reshape(shape)
    for axis in range(1, n_qubits + 1):
        psi = c * psi + s * np.flip(psi, axis=axis)
    return psi.reshape(batch, -1)


def statevector_energy(hamiltonian: IsingHamiltonian, beta, gamma):
    """Exact expectation value by statevector simulation.

    Scalars in give a float out; arrays are broadcast and evaluated in
    memory-bounded chunks.
    """
    n = hamiltonian.n_qubits
    if n > MAX_ENUMERATION_QUBITS:
        raise EnumerationLimitError(
            f"statevector simulation limited to {MAX_ENUMERATION_QUBITS} qubits, got {n}"
        )
    energies = diagonal(hamiltonian.without_offset())
    return _simulate(energies, n, beta, gamma) + hamiltonian.offset


def _simulate(energies: np.ndarray, n_qubits: int, beta, gamma):
    beta_b, gamma_b = np.broadcast_arrays(np.asarray(beta, dtype=float), np.asarray(gamma, dtype=float))
    out_shape = beta_b.shape
    betas, gammas = beta_b.ravel(), gamma_b.ravel()
    dim = energies.size
    out = np.empty(betas.size)
    chunk = max(1, _MAX_BATCH_AMPLITUDES // dim)
    norm = 1.0 / np.sqrt(dim)
    for start in range(0, betas.size, chunk):
        b = betas[start:start + chunk]
        g = gammas[start:start + chunk]
        psi = norm * np.exp(-1j * g[:, None] * energies[None, :])
        psi = _apply_mixer(psi, n_qubits, np.cos(b), np.sin(b))
        # row-wise reduction keeps each point independent of batch size
        out[start:start + chunk] = np.sum((psi.real**2 + psi.imag**2) * energies, axis=1)
    if out_shape == ():
        return float(out[0])
    return out.reshape(out_shape)


def _split_terms(hamiltonian: IsingHamiltonian):
    if max_pauli_weight(hamiltonian) > 2:
        raise UnsupportedOrderError(
            "closed-form energy supports only 1- and 2-body terms, "
            f"got weight {max_pauli_weight(hamiltonian)}"
        )
    fields = np.zeros(hamiltonian.n_qubits)
    couplings: dict[tuple[int, int], float] = {}
    neighbors: list[dict[int, float]] = [{} for _ in range(hamiltonian.n_qubits)]
    for term in hamiltonian.terms:
        if term.weight == 1:
            fields[term.qubits[0]] = term.coefficient
        else:
            i, j = term.qubits
            couplings[(i, j)] = term.coefficient
            neighbors[i][j] = term.coefficient
            neighbors[j][i] = term.coefficient
    return fields, couplings, neighbors


def closed_form_energy(hamiltonian: IsingHamiltonian, beta, gamma):
    """Analytic p=1 energy for Hamiltonians with 1- and 2-body terms.

    Products over empty neighbour sets are 1. The sin^2 bracket of each
    coupling splits the neighbours of i and j into exclusive ones (plain
    cosines) and shared ones (cosines of sums and differences).
    """
    fields, couplings, neighbors = _split_terms(hamiltonian)
    beta, gamma = np.broadcast_arrays(np.asarray(beta, dtype=float), np.asarray(gamma, dtype=float))
    s2b = np.sin(2 * beta)
    s4b = np.sin(4 * beta)
    s2b_sq = s2b**2
    cos_cache: dict[float, np.ndarray] = {}

    def cos2g(x: float) -> np.ndarray:
        if x not in cos_cache:
            cos_cache[x] = np.cos(2 * gamma * x)
        return cos_cache[x]

    total = np.zeros(beta.shape)
    for i, h in enumerate(fields):
        if h == 0.0:
            continue
        term = h * s2b * np.sin(2 * gamma * h)
        for jik in neighbors[i].values():
            term = term * cos2g(jik)
        total = total + term

    for (i, j), J in couplings.items():
        hi, hj = fields[i], fields[j]
        ni, nj = neighbors[i], neighbors[j]
        prod_i = np.ones(beta.shape)
        for k, jik in ni.items():
            if k != j:
                prod_i = prod_i * cos2g(jik)
        prod_j = np.ones(beta.shape)
        for k, jjk in nj.items():
            if k != i:
                prod_j = prod_j * cos2g(jjk)
        first = 0.5 * J * s4b * np.sin(2 * gamma * J) * (cos2g(hi) * prod_i + cos2g(hj) * prod_j)

        exclusive = np.ones(beta.shape)
        for k, jik in ni.items():
            if k != j and k not in nj:
                exclusive = exclusive * cos2g(jik)
        for k, jjk in nj.items():
            if k != i and k not in ni:
                exclusive = exclusive * cos2g(jjk)
        plus = cos2g(hi + hj)
        minus = cos2g(hi - hj)
        for k in ni.keys() & nj.keys():
            plus = plus * cos2g(ni[k] + nj[k])
            minus = minus * cos2g(ni[k] - nj[k])
        second = 0.5 * J * s2b_sq * exclusive * (plus - minus)
        total = total + first - second

    total = total + hamiltonian.offset
    if total.shape == ():
        return float(total)
    return total


def toy_energy(a: float, b: float, c: float, beta, gamma):
    """Closed-form energy of ``a Z0 + b Z1 + c Z0 Z1``."""
    beta = np.asarray(beta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    s2b = np.sin(2 * beta)
    value = (
        a * s2b * np.sin(2 * a * gamma) * np.cos(2 * c * gamma)
        + b * s2b * np.sin(2 * b * gamma) * np.cos(2 * c * gamma)
        + 0.5 * c * (
            np.sin(4 * beta) * np.sin(2 * c * gamma) * (np.cos(2 * a * gamma) + np.cos(2 * b * gamma))
            - s2b**2 * (np.cos(2 * (a + b) * gamma) - np.cos(2 * (a - b) * gamma))
        )
    )
    if np.ndim(value) == 0:
        return float(value)
    return value


def toy_coefficients(hamiltonian: IsingHamiltonian) -> tuple[float, float, float]:
    """Return (a, b, c) if ``hamiltonian`` has the two-qubit toy form, else raise."""
    if hamiltonian.n_qubits != 2:
        raise UnsupportedOrderError("toy evaluator needs exactly 2 qubits")
    coeffs = {t.qubits: t.coefficient for t in hamiltonian.terms}
    return coeffs.get((0,), 0.0), coeffs.get((1,), 0.0), coeffs.get((0, 1), 0.0)


@dataclass(frozen=True)
class EnergyEvaluator:
    """Callable ``C(beta, gamma)`` bound to a Hamiltonian and an evaluation method.

    ``method="auto"`` resolves to ``closed_form`` for weight <= 2 and to
    ``statevector`` otherwise.
    """

    hamiltonian: IsingHamiltonian
    method: str = "auto"

    def __post_init__(self):
        method = self.method
        if method in ("auto", None):
            method = "closed_form" if max_pauli_weight(self.hamiltonian) <= 2 else "statevector"
        if method == "closed":
            method = "closed_form"
        if method not in METHODS:
            raise HamiltonianError(f"unknown evaluator method {self.method!r}; choose from {METHODS}")
        if method == "closed_form" and max_pauli_weight(self.hamiltonian) > 2:
            raise UnsupportedOrderError("closed_form evaluator requires term weight <= 2")
        if method == "toy":
            toy_coefficients(self.hamiltonian)
        object.__setattr__(self, "method", method)

    @cached_property
    def _energies(self) -> np.ndarray:
        if self.hamiltonian.n_qubits > MAX_ENUMERATION_QUBITS:
            raise EnumerationLimitError(
                f"statevector simulation limited to {MAX_ENUMERATION_QUBITS} qubits, "
                f"got {self.hamiltonian.n_qubits}"
            )
        return diagonal(self.hamiltonian.without_offset())

    def __call__(self, beta, gamma):
        if self.method == "statevector":
            value = _simulate(self._energies, self.hamiltonian.n_qubits, beta, gamma)
            return value + self.hamiltonian.offset
        if self.method == "closed_form":
            return closed_form_energy(self.hamiltonian, beta, gamma)
        a, b, c = toy_coefficients(self.hamiltonian)
        value = toy_energy(a, b, c, beta, gamma)
        return value + self.hamiltonian.offset

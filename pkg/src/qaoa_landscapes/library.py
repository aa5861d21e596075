"""Named Hamiltonians used throughout the experiments.

Qubits are 0-based everywhere; families written with 1-based ``Z_1 .. Z_6``
map ``Z_i`` to qubit ``i - 1``.

Builtin names understood by :func:`resolve_builtin`:

``H1``, ``H2``
    A 2-qubit and a 6-qubit Hamiltonian with contrasting landscapes.
``toy:a,b,c``
    ``a Z0 + b Z1 + c Z0 Z1``.
``klocal:k``
    Six 1-body terms plus one k-body term ``Z0 .. Z_{k-1}`` (``k=1`` gives the bare base).
``H6`` .. ``H9``
    All 1-, 2- and 3-body terms on six qubits, and the variants with the first
    1-, 2- or 3-body coefficient raised to 25.
``interp:j``
    Step ``j`` (0..20) of the one-term-at-a-time walk from all 1-body terms to
    all 1- and 3-body terms.
"""

from __future__ import annotations

from itertools import combinations

from .exceptions import HamiltonianError
from .hamiltonian import (
    IsingHamiltonian,
    PauliZTerm,
    all_k_body_terms,
    build_hamiltonian,
    interpolation_sequence,
)

N_FAMILY_QUBITS = 6
LARGE_COEFFICIENT = 25.0


def h1() -> IsingHamiltonian:
    return build_hamiltonian(2, [((0,), -2.75), ((1,), -3.25), ((0, 1), 3.75)])


def h2() -> IsingHamiltonian:
    """Six-qubit Hamiltonian with up to 4-body terms, coefficients in multiples of 1/8.

    The two 4-body terms are Z0 Z2 Z4 Z5 and Z1 Z3 Z4 Z5.
    """
    raw: list[tuple[tuple[int, ...], float]] = []
    raw += [((i,), 0.25) for i in range(6)]
    raw += [((i, i + 1), 0.75) for i in (0, 2, 4)]
    raw += [((i, i + 2, 4, 5), 0.125) for i in (0, 1)]
    raw += [((0, i), 0.125 * (-1) ** (i + 1)) for i in range(2, 6)]
    raw += [((1, i), 0.125 * (-1) ** i) for i in range(2, 6)]
    raw += [((i, 4), 0.125 * (-1) ** i) for i in (2, 3)]
    raw += [((i, 5), 0.125 * (-1) ** (i + 1)) for i in (2, 3)]
    raw += [((0, 1, i), -0.125) for i in range(2, 6)]
    raw += [((i, 4, 5), -0.125) for i in range(4)]
    raw += [((2, 3, i), -0.125) for i in (0, 1, 4, 5)]
    return build_hamiltonian(6, raw)


def toy(a: float, b: float, c: float) -> IsingHamiltonian:
    return build_hamiltonian(2, [((0,), a), ((1,), b), ((0, 1), c)])


def one_body_base(n_qubits: int = N_FAMILY_QUBITS) -> IsingHamiltonian:
    return IsingHamiltonian(n_qubits, tuple(all_k_body_terms(n_qubits, 1)))


def k_local(k: int, n_qubits: int = N_FAMILY_QUBITS) -> IsingHamiltonian:
    """Base of all 1-body terms plus a single ``Z0 Z1 ... Z_{k-1}`` term."""
    if not 1 <= k <= n_qubits:
        raise HamiltonianError(f"k must be in 1..{n_qubits}, got {k}")
    base = one_body_base(n_qubits)
    if k == 1:
        return base
    return base.with_terms([PauliZTerm(tuple(range(k)), 1.0)])


def h6() -> IsingHamiltonian:
    terms = []
    for k in (1, 2, 3):
        terms += all_k_body_terms(N_FAMILY_QUBITS, k)
    return IsingHamiltonian(N_FAMILY_QUBITS, tuple(terms))


def large_coefficient_variant(k: int) -> IsingHamiltonian:
    """H6 with the first k-body term's coefficient set to 25 (k=1,2,3 give H7, H8, H9)."""
    base = h6()
    target = tuple(range(k))
    return IsingHamiltonian(
        base.n_qubits,
        tuple(
            PauliZTerm(t.qubits, LARGE_COEFFICIENT if t.qubits == target else t.coefficient)
            for t in base.terms
        ),
    )


def three_body_interpolation() -> list[IsingHamiltonian]:
    """21 Hamiltonians: all 1-body terms, then the 20 three-body terms added one at a time."""
    added = [PauliZTerm(q, 1.0) for q in combinations(range(N_FAMILY_QUBITS), 3)]
    return interpolation_sequence(one_body_base(), added)


def resolve_builtin(name: str) -> IsingHamiltonian:
    key = name.strip()
    simple = {
        "H1": h1,
        "H2": h2,
        "H6": h6,
        "H7": lambda: large_coefficient_variant(1),
        "H8": lambda: large_coefficient_variant(2),
        "H9": lambda: large_coefficient_variant(3),
    }
    if key in simple:
        return simple[key]()
    prefix, _, arg = key.partition(":")
    try:
        if prefix == "toy":
            a, b, c = (float(x) for x in arg.split(","))
            return toy(a, b, c)
        if prefix == "klocal":
            return k_local(int(arg))
        if prefix == "interp":
            sequence = three_body_interpolation()
            step = int(arg)
            if not 0 <= step < len(sequence):
                raise HamiltonianError(f"interpolation step must be in 0..{len(sequence) - 1}")
            return sequence[step]
    except ValueError as exc:
        if isinstance(exc, HamiltonianError):
            raise
        raise HamiltonianError(f"bad builtin argument in {name!r}: {exc}") from exc
    raise HamiltonianError(f"unknown builtin Hamiltonian {name!r}")


BUILTIN_NAMES = ("H1", "H2", "toy:a,b,c", "klocal:k", "H6", "H7", "H8", "H9", "interp:j")

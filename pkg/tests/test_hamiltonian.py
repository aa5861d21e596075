import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaoa_landscapes.exceptions import (
    GraphGenerationError,
    HamiltonianError,
    IncommensurateCoefficientsError,
)
from qaoa_landscapes.hamiltonian import (
    IsingHamiltonian,
    PauliZTerm,
    WeightedGraph,
    all_k_body_terms,
    beta_frequency_bound,
    build_hamiltonian,
    diagonal,
    eigenvalue_per_bitstring,
    fundamental_gamma_period,
    gamma_frequency_bound,
    gamma_frequency_set,
    gamma_period,
    interpolation_sequence,
    max_pauli_weight,
    maxcut_hamiltonian,
    random_regular_graph,
    rational_gcd,
    read_graph,
    read_hamiltonian,
    write_graph,
    write_hamiltonian,
)
from qaoa_landscapes.library import (
    h1,
    h2,
    h6,
    k_local,
    large_coefficient_variant,
    one_body_base,
    resolve_builtin,
    three_body_interpolation,
    toy,
)

from conftest import dense_matrix, random_hamiltonian


def test_h1_terms():
    h = h1()
    assert len(h.terms) == 3
    assert [t.coefficient for t in h.terms] == [-2.75, -3.25, 3.75]


def test_cancellation_and_merge():
    assert build_hamiltonian(2, [((0,), 1.0), ((0,), -1.0)]).terms == ()
    merged = build_hamiltonian(2, [((0,), 1.0), ((0,), 2.0)])
    assert merged.terms == (PauliZTerm((0,), 3.0),)


def test_qubit_order_is_canonical():
    h = build_hamiltonian(3, [((2, 0), 1.0), ((0, 2), 0.5)])
    assert h.terms == (PauliZTerm((0, 2), 1.5),)


def test_identity_goes_to_offset():
    h = build_hamiltonian(2, [((), 1.5), ((0,), 1.0), ((), 0.5)])
    assert h.offset == 2.0
    assert len(h.terms) == 1


@pytest.mark.parametrize(
    "raw",
    [
        [((0, 0), 1.0)],
        [((-1,), 1.0)],
        [((0,), math.inf)],
        [((2,), 1.0)],
    ],
)
def test_invalid_terms(raw):
    with pytest.raises(HamiltonianError):
        build_hamiltonian(2, raw)


def test_max_weight_and_beta_bound():
    assert max_pauli_weight(h1()) == 2
    assert max_pauli_weight(k_local(5)) == 5
    assert max_pauli_weight(build_hamiltonian(1, [((0,), 1.0)])) == 1
    assert beta_frequency_bound(h1()) == 4
    assert beta_frequency_bound(h2()) == 8
    assert beta_frequency_bound(one_body_base()) == 2


def test_gamma_period_examples():
    assert gamma_period(toy(1, 1, 5)) == pytest.approx(math.pi, abs=1e-12)
    h = build_hamiltonian(2, [((0,), 0.17), ((1,), 0.34)])
    assert gamma_period(h) == pytest.approx(math.pi / 0.17, rel=1e-12)
    assert gamma_period(build_hamiltonian(1, [((0,), 1.0)])) == pytest.approx(math.pi)
    assert gamma_period(h1()) == pytest.approx(4 * math.pi)


def test_gamma_period_incommensurate():
    h = build_hamiltonian(2, [((0,), 1.0), ((1,), math.sqrt(2))])
    with pytest.raises(IncommensurateCoefficientsError):
        gamma_period(h)


def test_rational_gcd():
    assert rational_gcd([0.5, 0.75]) == 0.25
    assert rational_gcd([0.0]) == 0.0


def test_fundamental_period_divides_gamma_period():
    # H1 eigenvalues differ by integers, so 2 pi is the tight period
    assert fundamental_gamma_period(h1()) == pytest.approx(2 * math.pi)
    for h in (toy(1, 1, 5), h2(), k_local(3), h6()):
        ratio = gamma_period(h) / fundamental_gamma_period(h)
        assert ratio == pytest.approx(round(ratio))


def test_gamma_frequency_bound():
    assert gamma_frequency_bound(toy(1, 1, 1)) == 6
    assert gamma_frequency_bound(toy(1, 1, 5)) == 14
    assert gamma_frequency_bound(h1()) == 19.5


def test_eigenvalues():
    h = toy(1, 1, 1)
    assert eigenvalue_per_bitstring(h, "00") == 3
    assert eigenvalue_per_bitstring(h, "01") == -1
    assert eigenvalue_per_bitstring(build_hamiltonian(1, [((0,), 1.0)]), "1") == -1
    with pytest.raises(HamiltonianError):
        eigenvalue_per_bitstring(h, "0")


def test_diagonal_matches_dense_matrix(rng):
    for _ in range(10):
        h = random_hamiltonian(rng, int(rng.integers(1, 6)), 4)
        np.testing.assert_allclose(diagonal(h), np.real(np.diag(dense_matrix(h))), atol=1e-12)


def test_diagonal_matches_bitstrings(rng):
    h = random_hamiltonian(rng, 4, 3)
    energies = diagonal(h)
    for index in range(16):
        bits = [(index >> q) & 1 for q in range(4)]
        assert energies[index] == pytest.approx(eigenvalue_per_bitstring(h, bits))


def test_gamma_frequency_set_examples():
    np.testing.assert_allclose(gamma_frequency_set(toy(1, 1, 1)), [-4, 0, 4])
    freqs = set(np.round(gamma_frequency_set(toy(1, 1, 5)), 9))
    assert {8, -8, 12, -12} <= freqs
    np.testing.assert_allclose(gamma_frequency_set(IsingHamiltonian(2)), [0])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_frequency_set_support(seed):
    rng = np.random.default_rng(seed)
    h = random_hamiltonian(rng, int(rng.integers(1, 5)), 3, integer=True)
    freqs = gamma_frequency_set(h)
    assert np.max(np.abs(freqs)) <= gamma_frequency_bound(h) + 1e-9
    # every frequency is a signed sum of a subset of the 2 c_k
    sums = {0.0}
    for c in h.coefficients:
        sums = {s + d for s in sums for d in (0.0, 2 * c, -2 * c)}
    sums = np.array(sorted(sums))
    for f in freqs:
        assert np.min(np.abs(sums - f)) < 1e-9


def test_maxcut_hamiltonian():
    g = WeightedGraph(2, ((0, 1, 1.0),))
    assert maxcut_hamiltonian(g).terms == (PauliZTerm((0, 1), -0.5),)
    tri = WeightedGraph(3, ((0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)))
    assert [t.coefficient for t in maxcut_hamiltonian(tri).terms] == [-0.5] * 3
    assert maxcut_hamiltonian(WeightedGraph(2, ((0, 1, 0.0),))).terms == ()


def test_graph_validation():
    with pytest.raises(HamiltonianError):
        WeightedGraph(2, ((0, 0, 1.0),))
    with pytest.raises(HamiltonianError):
        WeightedGraph(2, ((0, 1, 1.0), (1, 0, 2.0)))
    with pytest.raises(HamiltonianError):
        WeightedGraph(2, ((0, 2, 1.0),))


def test_random_regular_graph():
    k4 = random_regular_graph(4, 3, seed=1)
    assert {(i, j) for i, j, _ in k4.edges} == {(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}
    with pytest.raises(GraphGenerationError):
        random_regular_graph(5, 3)
    a = random_regular_graph(8, 3, (-10, 10), seed=7)
    b = random_regular_graph(8, 3, (-10, 10), seed=7)
    assert a == b


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([4, 6, 8, 10, 12, 16]), st.integers(0, 1000))
def test_regular_graph_degrees(n, seed):
    g = random_regular_graph(n, 3, (-10, 10), seed=seed)
    assert list(g.degrees()) == [3] * n
    assert all(-10 <= w <= 10 for _, _, w in g.edges)
    assert all(i < j for i, j, _ in g.edges)


def test_interpolation_sequence():
    seq = three_body_interpolation()
    assert len(seq) == 21
    assert seq[0] == one_body_base()
    target = IsingHamiltonian(6, tuple(all_k_body_terms(6, 1) + all_k_body_terms(6, 3)))
    assert seq[-1] == target
    assert [len(h.terms) for h in seq] == list(range(6, 27))
    base = one_body_base()
    assert interpolation_sequence(base, []) == [base]
    t = PauliZTerm((0, 1, 2), 1.0)
    assert interpolation_sequence(base, [t]) == [base, base.with_terms([t])]


def test_library_families():
    assert len(h2().terms) == 35
    assert len(h6().terms) == 6 + 15 + 20
    for k in (1, 2, 3):
        h = large_coefficient_variant(k)
        big = [t for t in h.terms if t.coefficient == 25.0]
        assert [t.qubits for t in big] == [tuple(range(k))]
    assert k_local(4).terms[-1] == PauliZTerm((0, 1, 2, 3), 1.0)
    assert resolve_builtin("toy:1,2,3") == toy(1, 2, 3)
    assert resolve_builtin("interp:20") == three_body_interpolation()[20]
    assert resolve_builtin("H7") == large_coefficient_variant(1)
    with pytest.raises(HamiltonianError):
        resolve_builtin("H5")
    with pytest.raises(HamiltonianError):
        resolve_builtin("toy:1,2")


def test_hamiltonian_file_round_trip(tmp_path, rng):
    h = random_hamiltonian(rng, 5, 4)
    h = h + build_hamiltonian(5, [((), 0.25)])
    path = tmp_path / "h.json"
    write_hamiltonian(h, path)
    assert read_hamiltonian(path) == h
    data = json.loads(path.read_text())
    assert set(data) == {"n_qubits", "terms"}


def test_malformed_hamiltonian_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(HamiltonianError):
        read_hamiltonian(path)
    path.write_text(json.dumps({"n_qubits": 1, "terms": [{"qubits": [3], "coeff": 1.0}]}))
    with pytest.raises(HamiltonianError):
        read_hamiltonian(path)


def test_graph_file_round_trip(tmp_path):
    g = random_regular_graph(10, 3, (-10, 10), seed=3)
    path = tmp_path / "g.json"
    write_graph(g, path)
    assert read_graph(path) == g

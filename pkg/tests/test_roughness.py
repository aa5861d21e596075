import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaoa_landscapes.energy import EnergyEvaluator
from qaoa_landscapes.fourier import FourierSpectrum, lattice, spectrum
from qaoa_landscapes.hamiltonian import IsingHamiltonian
from qaoa_landscapes.library import h1, h2, k_local, toy
from qaoa_landscapes.roughness import (
    RoughnessReport,
    analyze_hamiltonian,
    concentration_study,
    direction_span,
    fourier_density,
    fourier_max,
    fourier_mean,
    random_directions,
    read_report,
    roughness_report,
    tv_1d,
    tv_grid,
    tv_random_directions,
    write_report,
)
from qaoa_landscapes.scan import LandscapeScan, grid_scan


def test_tv_1d_examples():
    assert tv_1d(np.linspace(-3, 7, 50)) == pytest.approx(1.0)
    assert tv_1d([2.0, 2.0, 2.0]) == 0.0
    x = np.linspace(0, 2 * math.pi, 2001)
    assert tv_1d(np.sin(x)) == pytest.approx(2.0, abs=0.02)
    with pytest.raises(ValueError):
        tv_1d([1.0])


def test_direction_span_rules():
    d = (math.cos(0.3), math.sin(0.3))
    fastest = direction_span(d, math.pi, math.pi)
    slowest = direction_span(d, math.pi, math.pi, "slowest")
    assert fastest == pytest.approx(math.pi / math.cos(0.3))
    assert slowest == pytest.approx(math.pi / math.sin(0.3))
    assert direction_span((0.0, 1.0), 2 * math.pi, math.pi) == math.pi
    assert direction_span((1.0, 0.0), 2 * math.pi, math.pi, "slowest") == 2 * math.pi
    with pytest.raises(ValueError):
        direction_span((0.0, 0.0), 1, 1)
    with pytest.raises(ValueError):
        direction_span(d, 1, 1, "middle")


def test_random_directions_are_unit_and_prefix_stable():
    a = random_directions(10, 3)
    b = random_directions(20, 3)
    np.testing.assert_allclose(np.hypot(a[:, 0], a[:, 1]), 1.0)
    np.testing.assert_array_equal(a, b[:10])


def test_constant_landscape_has_zero_tv():
    tv = tv_random_directions(EnergyEvaluator(IsingHamiltonian(2)), n_dirs=5, m=10)
    assert tv.mean == 0 and tv.index == 0


def test_tv_determinism_and_scale_invariance():
    ev = EnergyEvaluator(h1())
    a = tv_random_directions(ev, n_dirs=50, m=100, seed=4, period_gamma=2 * math.pi)
    b = tv_random_directions(ev, n_dirs=50, m=100, seed=4, period_gamma=2 * math.pi)
    assert (a.mean, a.std) == (b.mean, b.std)
    c = tv_random_directions(lambda be, g: 5 * ev(be, g), n_dirs=50, m=100, seed=4, period_gamma=2 * math.pi)
    assert c.mean == pytest.approx(a.mean, rel=1e-9)
    assert c.std == pytest.approx(a.std, rel=1e-9)


def test_tv_matches_manual_sections():
    ev = EnergyEvaluator(toy(1, 1, 5))
    tv = tv_random_directions(ev, center=(0.1, -0.2), n_dirs=7, m=60, seed=11)
    from qaoa_landscapes.scan import line_section

    manual = []
    for d in random_directions(7, 11):
        span = direction_span(d, math.pi, math.pi)
        manual.append(tv_1d(line_section(ev, (0.1, -0.2), d, span, 60)))
    np.testing.assert_allclose(tv.values, manual, rtol=1e-12)
    assert tv.mean == pytest.approx(np.mean(manual))
    assert tv.std == pytest.approx(np.std(manual))


def test_tv_grid_examples():
    assert tv_grid(LandscapeScan(np.ones((5, 5)))) == 0.0
    res = 200
    g = np.arange(res) / res * math.pi
    values = np.cos(2 * g)[:, None] + np.cos(2 * g)[None, :]
    # each line covers one cosine period: TV 4 per axis, range 4
    assert tv_grid(LandscapeScan(values)) == pytest.approx(2.0, rel=0.05)
    assert tv_grid(LandscapeScan(values), normalize=False) == pytest.approx(8.0, rel=0.05)


def synthetic_spectrum(mags):
    coefficients = np.zeros((9, 9), dtype=complex)
    coefficients.flat[: len(mags)] = mags
    return FourierSpectrum(coefficients, lattice(9), lattice(9), (math.pi, math.pi))


def test_fourier_density_examples():
    assert fourier_density(synthetic_spectrum([2.0])) == pytest.approx(1.0)
    for k in (2, 5, 17):
        assert fourier_density(synthetic_spectrum([0.3] * k)) == pytest.approx(k, rel=1e-12)
    assert fourier_density(synthetic_spectrum([])) == 0.0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_fourier_density_bounded_by_support(seed):
    rng = np.random.default_rng(seed)
    mags = rng.uniform(0, 1, int(rng.integers(1, 40))) * (rng.uniform(size=1) > 0)
    s = synthetic_spectrum(mags)
    m = np.abs(s.coefficients)
    m[4, 4] = 0
    support = np.count_nonzero(m > 1e-12 * max(m.max(), 1e-300))
    fd = fourier_density(s)
    assert fd <= support + 1e-9
    if support:
        assert fd >= 1 - 1e-12


def test_fourier_max_and_mean_for_single_cosine():
    res, amp, f = 64, 3.0, 6
    g = np.arange(res) / res * math.pi
    s = spectrum(LandscapeScan(np.repeat(amp * np.cos(f * g)[:, None], res, axis=1)))
    assert fourier_max(s) == pytest.approx(amp / 2 * f)
    # two coefficients at |omega| = f, each amp/2, divided by the max present norm f
    assert fourier_mean(s) == pytest.approx(amp)
    zero = synthetic_spectrum([])
    assert fourier_max(zero) == 0.0 and fourier_mean(zero) == 0.0


@pytest.mark.parametrize("c", [1, 5, 10, 20])
def test_fourier_max_bounded_by_tv(c):
    scan = grid_scan(EnergyEvaluator(toy(1, 1, c)), 201, 201)
    bound = 2 / math.pi * tv_grid(scan, normalize=False)
    assert fourier_max(spectrum(scan)) <= 1.1 * bound


def test_scale_invariance_of_grid_metrics(rng):
    values = rng.normal(size=(20, 20))
    a, b = LandscapeScan(values), LandscapeScan(5 * values)
    assert tv_grid(b) == pytest.approx(tv_grid(a), rel=1e-9)
    assert fourier_density(spectrum(b)) == pytest.approx(fourier_density(spectrum(a)), rel=1e-9)


def test_report_round_trip(tmp_path):
    ev = EnergyEvaluator(toy(1, 1, 5))
    scan = grid_scan(ev, 31, 31)
    report = roughness_report(ev, scan, spectrum(scan), n_dirs=10, m=20, seed=2)
    path = tmp_path / "r.txt"
    write_report(report, path, {"hamiltonian": "toy:1,1,5"})
    assert read_report(path) == report
    text = path.read_text()
    assert text.startswith("hamiltonian=toy:1,1,5\n")
    assert "seed=2\n" in text and "span_rule=fastest\n" in text


def test_report_invariants():
    report = analyze_hamiltonian(h1(), n_dirs=20, m=50)
    values = [getattr(report, f) for f in ("tv_mean", "tv_std", "tv_index", "tv_grid", "fourier_max", "fourier_mean")]
    assert all(math.isfinite(v) and v >= 0 for v in values)
    assert report.fourier_density >= 1
    zero = analyze_hamiltonian(IsingHamiltonian(3), res=11, n_dirs=5, m=10)
    assert zero == RoughnessReport(0, 0, 0, 0, 0, 0, 0, 5, 10, 0, math.pi, math.pi)


def test_seed_to_seed_spread_is_small():
    means = [
        tv_random_directions(EnergyEvaluator(k_local(2)), seed=s).mean for s in range(5)
    ]
    assert np.std(means) / np.mean(means) <= 0.10


def test_tv_grid_ranks_like_directional_tv():
    reports = [analyze_hamiltonian(k_local(k)) for k in (2, 3, 4, 5)]
    tv = [r.tv_mean for r in reports]
    grid = [r.tv_grid for r in reports]
    assert np.argsort(tv).tolist() == np.argsort(grid).tolist()


def test_h1_rougher_than_h2_directionally():
    assert analyze_hamiltonian(h1()).tv_mean > analyze_hamiltonian(h2()).tv_mean


def test_concentration_study_is_deterministic():
    a = concentration_study((8,), n_seeds=2, seed=5, res=31, n_dirs=10, m=20)
    b = concentration_study((8,), n_seeds=2, seed=5, res=31, n_dirs=10, m=20)
    assert a == b
    assert a[0].n == 8 and len(a[0].reports) == 2

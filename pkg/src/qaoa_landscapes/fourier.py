"""Fourier landscapes of 2D scans.

The forward transform is normalized by ``1 / (res_gamma * res_beta)``, so a
component ``A cos(f theta)`` whose frequency lies on the lattice shows up
with magnitude ``A / 2`` at ``+f`` and ``-f``. Lattice index ``k`` on an axis
of extent ``E`` corresponds to the physical frequency ``f = 2 pi k / E``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .exceptions import IncommensurateCoefficientsError
from .hamiltonian import IsingHamiltonian, fundamental_gamma_period
from .scan import BETA_PERIOD, LandscapeScan

DEFAULT_PEAK_THRESHOLD = 1e-6


@dataclass(frozen=True)
class FourierSpectrum:
    """Complex coefficients on the integer lattice ``k_gamma x k_beta`` (both ascending)."""

    coefficients: np.ndarray
    k_gamma: np.ndarray
    k_beta: np.ndarray
    extent: tuple[float, float]
    leakage_warning: bool = False

    @property
    def f_gamma(self) -> np.ndarray:
        return self.k_gamma * (2 * math.pi / self.extent[0])

    @property
    def f_beta(self) -> np.ndarray:
        return self.k_beta * (2 * math.pi / self.extent[1])

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.coefficients)

    def frequency_grid(self) -> tuple[np.ndarray, np.ndarray]:
        """Physical (f_gamma, f_beta) for every coefficient, shaped like ``coefficients``."""
        return np.meshgrid(self.f_gamma, self.f_beta, indexing="ij")

    def coefficient_at(self, k_gamma: int, k_beta: int) -> complex:
        i = int(k_gamma - self.k_gamma[0])
        j = int(k_beta - self.k_beta[0])
        if not (0 <= i < self.k_gamma.size and 0 <= j < self.k_beta.size):
            return 0j
        return complex(self.coefficients[i, j])


class Peak(NamedTuple):
    f_gamma: float
    f_beta: float
    magnitude: float


def lattice(res: int) -> np.ndarray:
    """Integer frequencies ``-floor(res/2) .. ceil(res/2) - 1``."""
    return np.arange(-(res // 2), (res + 1) // 2)


def spectrum(scan: LandscapeScan, leakage_warning: bool = False) -> FourierSpectrum:
    res_gamma, res_beta = scan.resolution
    coefficients = np.fft.fftshift(np.fft.fft2(scan.values)) / (res_gamma * res_beta)
    return FourierSpectrum(
        coefficients=coefficients,
        k_gamma=lattice(res_gamma),
        k_beta=lattice(res_beta),
        extent=scan.extent,
        leakage_warning=leakage_warning,
    )


def remove_dc(s: FourierSpectrum) -> FourierSpectrum:
    coefficients = s.coefficients.copy()
    i = np.flatnonzero(s.k_gamma == 0)
    j = np.flatnonzero(s.k_beta == 0)
    if i.size and j.size:
        coefficients[i[0], j[0]] = 0.0
    return replace(s, coefficients=coefficients)


def half_spectrum(s: FourierSpectrum) -> FourierSpectrum:
    """Keep the ``f_gamma >= 0`` half; the other half is its point reflection, conjugated."""
    keep = s.k_gamma >= 0
    return replace(s, coefficients=s.coefficients[keep], k_gamma=s.k_gamma[keep])


def peaks(s: FourierSpectrum, relative_threshold: float = DEFAULT_PEAK_THRESHOLD) -> list[Peak]:
    """Non-DC lattice points with magnitude >= ``relative_threshold * max``, largest first."""
    if not 0 < relative_threshold < 1:
        raise ValueError("relative_threshold must lie in (0, 1)")
    mags = remove_dc(s).magnitudes
    top = mags.max(initial=0.0)
    if top == 0.0:
        return []
    f_gamma, f_beta = s.frequency_grid()
    idx = np.argwhere(mags >= relative_threshold * top)
    found = [Peak(float(f_gamma[i, j]), float(f_beta[i, j]), float(mags[i, j])) for i, j in idx]
    # stable sort keeps lattice order among equal magnitudes
    return sorted(found, key=lambda p: -p.magnitude)


def peak_frequencies(found: Sequence[Peak], decimals: int = 9) -> set[tuple[float, float]]:
    return {(round(p.f_gamma, decimals) + 0.0, round(p.f_beta, decimals) + 0.0) for p in found}


def sign_complete(freqs) -> set[tuple[float, float]]:
    """All sign combinations of each ``(|f_gamma|, |f_beta|)`` pair."""
    out = set()
    for fg, fb in freqs:
        for sg in (1, -1):
            for sb in (1, -1):
                out.add((sg * fg + 0.0, sb * fb + 0.0))
    return out


def leakage_expected(hamiltonian: IsingHamiltonian, extent_gamma: float, extent_beta: float = BETA_PERIOD) -> bool:
    """True when some frequency of the cost function is off the scan's lattice.

    Non-integer coefficients always count as leaky: their peaks spread over
    neighbouring lattice points unless the scan spans a (typically huge) exact period.
    """
    coeffs = hamiltonian.coefficients
    if np.any(np.abs(coeffs - np.rint(coeffs)) > 1e-9):
        return True
    if not hamiltonian.terms:
        return False
    try:
        period = fundamental_gamma_period(hamiltonian)
    except IncommensurateCoefficientsError:
        return True

    def is_multiple(extent, p):
        ratio = extent / p
        return abs(ratio - round(ratio)) <= 1e-9 * max(1.0, ratio) and round(ratio) >= 1

    return not (is_multiple(extent_gamma, period) and is_multiple(extent_beta, BETA_PERIOD))


# exact trigonometric-polynomial expansion, independent of any FFT

def _key(fg: float, fb: float) -> tuple[float, float]:
    return (round(fg, 9) + 0.0, round(fb, 9) + 0.0)


def _pair(fg: float, fb: float, plus: complex, minus: complex) -> dict:
    # +f and -f share a key at f = 0, so accumulate instead of overwriting
    out: dict = {}
    for key, value in ((_key(fg, fb), plus), (_key(-fg, -fb), minus)):
        out[key] = out.get(key, 0) + value
    return out


def _cos(fg: float, fb: float) -> dict:
    return _pair(fg, fb, 0.5, 0.5)


def _sin(fg: float, fb: float) -> dict:
    return _pair(fg, fb, -0.5j, 0.5j)


def _mul(*polys: dict) -> dict:
    out = {(0.0, 0.0): 1.0 + 0j}
    for poly in polys:
        nxt: dict = {}
        for (ag, ab), ca in out.items():
            for (bg, bb), cb in poly.items():
                key = _key(ag + bg, ab + bb)
                nxt[key] = nxt.get(key, 0) + ca * cb
        out = nxt
    return out


def _add(*terms: tuple[float, dict]) -> dict:
    out: dict = {}
    for weight, poly in terms:
        for key, value in poly.items():
            out[key] = out.get(key, 0) + weight * value
    return out


def toy_trig_polynomial(a: float, b: float, c: float) -> dict[tuple[float, float], complex]:
    """Exponential-Fourier coefficients of the toy cost function, keyed by (f_gamma, f_beta)."""
    s2b = _sin(0, 2)
    s4b = _sin(0, 4)
    poly = _add(
        (a, _mul(s2b, _sin(2 * a, 0), _cos(2 * c, 0))),
        (b, _mul(s2b, _sin(2 * b, 0), _cos(2 * c, 0))),
        (c / 2, _mul(s4b, _sin(2 * c, 0), _add((1, _cos(2 * a, 0)), (1, _cos(2 * b, 0))))),
        (-c / 2, _mul(s2b, s2b, _add((1, _cos(2 * (a + b), 0)), (-1, _cos(2 * (a - b), 0))))),
    )
    return {k: v for k, v in poly.items() if abs(v) > 1e-12}


def predict_toy_frequencies(c: float, a: float = 1.0, b: float = 1.0) -> set[tuple[float, float]]:
    """``(|f_gamma|, |f_beta|)`` pairs with nonzero amplitude for ``a Z0 + b Z1 + c Z0 Z1``.

    Coincident contributions are summed before the zero test, so cancelled
    components (e.g. the ``(0, 2)`` term at ``c = 1``) are absent. DC is excluded.
    """
    poly = toy_trig_polynomial(a, b, c)
    return {(abs(fg), abs(fb)) for fg, fb in poly if (fg, fb) != (0.0, 0.0)}


def write_spectrum(s: FourierSpectrum, path: str | Path, comments: Sequence[str] = ()) -> None:
    lines = [f"# {c}" for c in comments]
    lines.append(f"# extent={s.extent[0]:.17g},{s.extent[1]:.17g}")
    if s.leakage_warning:
        lines.append("# warning: spectral leakage expected (frequencies off the scan lattice)")
    lines.append("k_gamma,k_beta,f_gamma,f_beta,magnitude,phase")
    f_gamma, f_beta = s.f_gamma, s.f_beta
    mags = s.magnitudes
    phases = np.angle(s.coefficients)
    for i, kg in enumerate(s.k_gamma):
        for j, kb in enumerate(s.k_beta):
            lines.append(
                f"{kg},{kb},{f_gamma[i]:.17g},{f_beta[j]:.17g},{mags[i, j]:.17g},{phases[i, j]:.17g}"
            )
    Path(path).write_text("\n".join(lines) + "\n")


def read_spectrum(path: str | Path) -> FourierSpectrum:
    extent = None
    leakage = False
    rows = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if line.startswith("# extent="):
            extent = tuple(float(x) for x in line.split("=", 1)[1].split(","))
        elif line.startswith("# warning: spectral leakage"):
            leakage = True
        elif line and not line.startswith("#") and not line.startswith("k_gamma"):
            kg, kb, _, _, mag, phase = line.split(",")
            rows.append((int(kg), int(kb), float(mag), float(phase)))
    if extent is None:
        raise ValueError(f"{path}: missing extent header")
    k_gamma = np.array(sorted({r[0] for r in rows}))
    k_beta = np.array(sorted({r[1] for r in rows}))
    coefficients = np.zeros((k_gamma.size, k_beta.size), dtype=complex)
    for kg, kb, mag, phase in rows:
        coefficients[kg - k_gamma[0], kb - k_beta[0]] = mag * np.exp(1j * phase)
    return FourierSpectrum(coefficients, k_gamma, k_beta, extent, leakage)

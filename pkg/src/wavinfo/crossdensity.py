"""Mixed time-frequency inner product of a wavelet with its own spectrum.

For a unit-energy wavelet the mixed signal ``psi(z) + Psi(z)/sqrt(2pi)`` has
energy ``2 + 2 * cross_term``, where the cross term is the normalised inner
product between the wavelet and its spectrum on a shared axis. Cauchy-Schwarz
bounds it by one, with equality exactly for Fourier-invariant wavelets.

Three readings of the cross term are offered:

``"aligned"`` (default)
    ``|int psi_c(z) conj(Psi_c(z)) dz| / sqrt(2pi)`` after moving the time
    and frequency centroids to the origin (translate in time, demodulate in
    frequency). Translation and modulation keep both entropies, the energy
    and the L1 norm, so the bounds below still hold; a complex Morlet then
    reduces to its Gaussian envelope, which is Fourier-invariant.
``"conjugate"``
    ``Re int psi(z) conj(Psi(z)) dz / sqrt(2pi)``.
``"reflected"``
    ``Re int psi(z) conj(Psi(-z)) dz / sqrt(2pi)``.

For real wavelets ``Psi(-z) = conj(Psi(z))``, so the last two differ only
by the conjugation inside the real part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._windows import freq_window, time_window
from .catalog import resolve_wavelet
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "CrossDensityResult",
    "cross_term",
    "mixed_inner_product",
    "absolute_bound",
    "is_invariant_wavelet",
    "cross_density",
    "FORMS",
]

FORMS = ("aligned", "conjugate", "reflected")
_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class CrossDensityResult:
    cross_term: float
    mixed_inner_product: float
    abs_bound: float
    form: str = "aligned"


def _integrand(w, form):
    if form == "aligned":
        tc, fc = w.time_center, w.freq_center

        def f(z):
            psi_c = w.time(z + tc) * np.exp(-1j * fc * z)
            spec_c = np.exp(1j * (z + fc) * tc) * w.spectrum(z + fc)
            return psi_c * np.conj(spec_c)

        return f, tc, fc
    if form == "conjugate":
        return (lambda z: w.time(z) * np.conj(w.spectrum(z))), 0.0, 0.0
    if form == "reflected":
        return (lambda z: w.time(z) * np.conj(w.spectrum(-z))), 0.0, 0.0
    raise ValueError(f"form must be one of {FORMS}, got {form!r}")


def cross_term(w, config=None, form="aligned"):
    """Normalised inner product of ``w`` with its spectrum; see module notes."""
    config = config or QuadratureConfig()
    w = resolve_wavelet(w)
    f, tc, fc = _integrand(w, form)
    (tlo, thi), _ = time_window(w, config)
    (flo, fhi), _ = freq_window(w, config)
    # the product vanishes wherever either factor does
    if form == "reflected":
        flo, fhi = -fhi, -flo
    lo = max(tlo - tc, flo - fc)
    hi = min(thi - tc, fhi - fc)
    if not hi > lo:
        return 0.0
    breaks = [b - tc for b in w.time_breaks]
    val, _ = integrate(f, lo, hi, config, breakpoints=breaks, max_width=w.freq_panel)
    val = val / _SQRT2PI
    if form == "aligned":
        return float(abs(val))
    return float(np.real(val))


def mixed_inner_product(w, config=None, form="aligned"):
    """Energy of the mixed time-frequency signal: ``1 + 2 * cross_term + 1``."""
    return 2.0 + 2.0 * cross_term(w, config, form)


def absolute_bound(w, config=None):
    """``(int |psi| dt)^2 / sqrt(2pi)``, the absolute-integrability bound."""
    config = config or QuadratureConfig()
    w = resolve_wavelet(w)
    (lo, hi), _ = time_window(w, config)
    l1, _ = integrate(lambda t: np.abs(w.time(t)), lo, hi, config, breakpoints=w.time_breaks)
    l1 = float(np.real(l1))
    if not math.isfinite(l1):
        return math.inf
    return l1 * l1 / _SQRT2PI


def is_invariant_wavelet(w, tol=1e-2, config=None, form="aligned"):
    """True when ``|cross_term| >= 1 - tol``."""
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    return abs(cross_term(w, config, form)) >= 1.0 - tol


def cross_density(w, config=None, form="aligned"):
    """Cross term, mixed inner product and absolute bound together."""
    ct = cross_term(w, config, form)
    return CrossDensityResult(ct, 2.0 + 2.0 * ct, absolute_bound(w, config), form)

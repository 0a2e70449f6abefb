"""Kullback-Leibler distances between wavelets.

Wavelets with different support lengths are compared on a common footing:
both supports are translated to start at zero and the second wavelet is
read at ``lambda * t`` with ``lambda = |Supp psi2| / |Supp psi1|``, so that
``Supp psi1`` maps onto ``Supp psi2``. Supports are exact for compact
wavelets and effective supports (``config.support_fraction``) otherwise.

Two readings are offered. The literal distance compares ``|psi1(t)|^2``
with ``|psi2(lambda t)|^2`` as they stand, so a wavelet and its own daughter
are at a nonzero distance. The normalized distance includes the Jacobian,
comparing against ``lambda |psi2(lambda t)|^2``, which is a density again;
it is a true KL divergence and vanishes for rescaled copies.

Filter systems enter through their cascade wavelets; any function here
accepts a catalog name in place of a wavelet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._windows import neg_plogp, plogq, time_window, zero_breaks
from .catalog import effective_support, load_wavelet, resolve_wavelet
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "DistanceResult",
    "kl_distance_time",
    "kl_distance_normalized",
    "kl_distance_full",
    "divergence_from_equiprobability",
    "gibbs_cross_entropy",
]


@dataclass(frozen=True)
class DistanceResult:
    """A wavelet distance in bits, labelled with the variant that produced it.

    ``lam`` and ``mu`` are the time and frequency support ratios used
    (``mu`` is ``None`` for time-only distances).
    """

    value: float
    variant: str
    lam: float
    mu: float | None = None

    def __float__(self):
        return float(self.value)


def _time_support(w, config):
    if w.support is not None:
        return tuple(w.support)
    return effective_support(w, config.support_fraction, "time").time


def _freq_support(w, config):
    return effective_support(w, config.support_fraction, "frequency").frequency


def _kl(d1, d2, lo, hi, config, breaks, max_width):
    """``int d1 log2(d1 / d2)`` over ``[lo, hi]``; ``inf`` if ``d2`` vanishes under ``d1``."""
    n = max(4001, int(math.ceil(16.0 * (hi - lo) / max_width)) + 1) if max_width else 4001
    zb = zero_breaks(d2, lo, hi, n=n)

    def f(x):
        p = d1(x)
        return -neg_plogp(p) - plogq(p, d2(x))

    val, _ = integrate(f, lo, hi, config, breakpoints=list(breaks) + zb, max_width=max_width)
    val = float(np.real(val))
    return val


def _time_term(w1, w2, config, normalized):
    lo1, hi1 = _time_support(w1, config)
    lo2, hi2 = _time_support(w2, config)
    lam = float((hi2 - lo2) / (hi1 - lo1))
    jac = lam if normalized else 1.0

    def d2(t):
        return jac * w2.density(lo2 + lam * (t - lo1))

    breaks = list(w1.time_breaks) + [lo1 + (b - lo2) / lam for b in w2.time_breaks]
    width = min(w1.time_width, w2.time_width / lam) / 64.0
    return _kl(w1.density, d2, lo1, hi1, config, breaks, width), lam


def _freq_term(w1, w2, config, normalized):
    lo1, hi1 = _freq_support(w1, config)
    lo2, hi2 = _freq_support(w2, config)
    mu = float((hi2 - lo2) / (hi1 - lo1))
    jac = mu if normalized else 1.0

    def s2(x):
        return jac * w2.spectral_density(lo2 + mu * (x - lo1))

    panel = min(w1.freq_panel or math.inf, (w2.freq_panel or math.inf) / mu)
    if not math.isfinite(panel):
        panel = (hi1 - lo1) / 256.0
    return _kl(w1.spectral_density, s2, lo1, hi1, config, (), panel), mu


def kl_distance_time(w1, w2, config=None):
    """Literal time-domain distance ``int |psi1|^2 log2(|psi1|^2 / |psi2(lam t)|^2)``."""
    config = config or QuadratureConfig()
    w1, w2 = resolve_wavelet(w1), resolve_wavelet(w2)
    val, lam = _time_term(w1, w2, config, normalized=False)
    return DistanceResult(val, "D1_time", lam)


def kl_distance_normalized(w1, w2, config=None):
    """Time-domain KL divergence of ``|psi1|^2`` from ``lam |psi2(lam t)|^2``."""
    config = config or QuadratureConfig()
    w1, w2 = resolve_wavelet(w1), resolve_wavelet(w2)
    val, lam = _time_term(w1, w2, config, normalized=True)
    return DistanceResult(val, "normalized_D1", lam)


def kl_distance_full(w1, w2, config=None, normalized=True):
    """Time plus frequency distance.

    The frequency term compares ``|Psi1|^2 / 2pi`` with the second spectral
    density read at ``mu * w`` over the left-aligned frequency effective
    supports, ``mu`` being their length ratio. With ``normalized=False`` the
    Jacobians ``lam`` and ``mu`` are left out of both terms.
    """
    config = config or QuadratureConfig()
    w1, w2 = resolve_wavelet(w1), resolve_wavelet(w2)
    t_val, lam = _time_term(w1, w2, config, normalized)
    f_val, mu = _freq_term(w1, w2, config, normalized)
    variant = "D2_time_frequency" if normalized else "D2_time_frequency_literal"
    return DistanceResult(t_val + f_val, variant, lam, mu)


def divergence_from_equiprobability(w, config=None):
    """Normalized distance of ``|psi|^2`` from the flat density on its support.

    Equals ``log2 |Supp psi| - H_t(psi)`` restricted to the support, and is
    zero exactly for Haar-flat wavelets.
    """
    return kl_distance_normalized(w, load_wavelet("haar"), config).value


def gibbs_cross_entropy(w1, w2, config=None):
    """``-int |psi1|^2 log2 |psi2|^2`` on a shared time axis (no rescaling).

    Never below ``time_entropy(w1)``; ``inf`` when ``psi2`` vanishes on a
    set where ``psi1`` carries energy.
    """
    config = config or QuadratureConfig()
    w1, w2 = resolve_wavelet(w1), resolve_wavelet(w2)
    (lo, hi), _ = time_window(w1, config)
    breaks = list(w1.time_breaks) + list(w2.time_breaks) + zero_breaks(w2.density, lo, hi)
    val, _ = integrate(lambda t: -plogq(w1.density(t), w2.density(t)), lo, hi, config,
                       breakpoints=breaks)
    return float(np.real(val))

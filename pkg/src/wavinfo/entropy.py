"""Shannon entropies of wavelets.

A unit-energy wavelet defines two probability densities, ``|psi(t)|^2`` in
time and ``|Psi(w)|^2 / 2pi`` in frequency. Their differential entropies
(in bits) are the time and frequency entropies; the sum is the global
entropy, which is unchanged by dilation and translation because the two
parts shift by ``+log2|a|`` and ``-log2|a|``.

For filter-bank systems the squared taps ``g_k^2`` form a discrete density
whose entropy is :func:`mra_entropy`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._windows import freq_window, neg_plogp, plogq, time_window, zero_breaks
from .catalog import load_filter, resolve_wavelet
from .exceptions import WaveletError
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "EntropyResult",
    "SlowDecayWarning",
    "time_entropy",
    "frequency_entropy",
    "global_entropy",
    "mra_entropy",
    "entropy_upper_bound",
]


class SlowDecayWarning(UserWarning):
    """Spectral tail correction dominates the error budget."""


@dataclass(frozen=True)
class EntropyResult:
    value: float
    estimated_error: float
    domain: str

    def __float__(self):
        return float(self.value)


def _tail_error(missing_mass, edge_density):
    if missing_mass <= 0:
        return 0.0
    return missing_mass * (1.0 + abs(math.log2(max(edge_density, 1e-300))))


def time_entropy(w, config=None):
    """``-integral d(t) log2 d(t) dt`` with ``d = |psi|^2``.

    Compact wavelets are integrated over their support with panels aligned to
    the discontinuities; others over the effective support at
    ``config.truncation_fraction``.
    """
    config = config or QuadratureConfig()
    w = resolve_wavelet(w)
    (lo, hi), missing = time_window(w, config)
    val, err = integrate(lambda t: neg_plogp(w.density(t)), lo, hi, config,
                         breakpoints=w.time_breaks)
    edge = float(max(w.density(np.array([lo, hi]))))
    return EntropyResult(float(np.real(val)), err + _tail_error(missing, edge), "time")


def frequency_entropy(w, config=None):
    """``-integral s(w) log2 s(w) dw`` with ``s = |Psi|^2 / 2pi``.

    Spectra with algebraic decay (Haar-type) are integrated up to a cutoff
    and completed with the wavelet's analytic tail model.
    """
    config = config or QuadratureConfig()
    w = resolve_wavelet(w)
    (lo, hi), tail = freq_window(w, config)
    val, err = integrate(lambda x: neg_plogp(w.spectral_density(x)), lo, hi, config,
                         max_width=w.freq_panel)
    val = float(np.real(val))
    if tail is not None:
        _, t_ent, t_err = tail
        val += t_ent
        err += t_err
        if t_err > config.tolerance * 100:
            warnings.warn(
                f"{w.name}: spectral tail error {t_err:.2g} bits exceeds the quadrature "
                "tolerance; raise freq_cutoff for tighter results",
                SlowDecayWarning,
                stacklevel=2,
            )
    else:
        missing = config.truncation_fraction
        edge = float(max(w.spectral_density(np.array([lo, hi]))))
        err += _tail_error(1.0 - missing if config.freq_window is None else 0.0, edge)
    return EntropyResult(val, err, "frequency")


def global_entropy(w, config=None):
    """Time entropy plus frequency entropy."""
    w = resolve_wavelet(w)
    ht = time_entropy(w, config)
    hf = frequency_entropy(w, config)
    return EntropyResult(ht.value + hf.value, ht.estimated_error + hf.estimated_error, "global")


def mra_entropy(p, taps="g", tolerance=1e-10):
    """Entropy in bits of the discrete density ``{g_k^2}`` (or ``{h_k^2}``).

    Raises
    ------
    WaveletError
        If the squared taps do not sum to one within ``tolerance``.
    """
    if isinstance(p, str):
        p = load_filter(p)
    if taps not in ("g", "h"):
        raise ValueError(f"taps must be 'g' or 'h', got {taps!r}")
    c = np.asarray(p.g if taps == "g" else p.h, dtype=float)
    prob = c * c
    if abs(prob.sum() - 1.0) > tolerance:
        raise WaveletError(
            f"{p.name}: squared {taps} taps sum to {prob.sum():.15g}, not 1; "
            "filter is not normalised"
        )
    # (1/sqrt2)^2 rounds above 1/2; renormalising keeps db1 at exactly one bit
    prob = prob / math.fsum(prob)
    return math.fsum(neg_plogp(prob))


def entropy_upper_bound(w, config=None, aligned=True):
    """Cross-entropy bound on the global entropy.

    Returns ``-int d_t log2 d_f - int d_f log2 d_t`` where ``d_t = |psi|^2``
    and ``d_f = |Psi|^2 / 2pi`` are placed on a common axis. With
    ``aligned=True`` both densities are first centred on their centroids
    (a translation leaves each entropy unchanged, so the bound stays valid);
    ``aligned=False`` uses them as they are. The bound is attained exactly
    when the two centred densities coincide, and is ``inf`` when one density
    vanishes where the other does not.
    """
    config = config or QuadratureConfig()
    w = resolve_wavelet(w)
    tc = w.time_center if aligned else 0.0
    fc = w.freq_center if aligned else 0.0

    def dt(z):
        return w.density(z + tc)

    def df(z):
        return w.spectral_density(z + fc)

    (tlo, thi), _ = time_window(w, config)
    (flo, fhi), _ = freq_window(w, config)
    breaks = [b - tc for b in w.time_breaks]
    lo, hi = tlo - tc, thi - tc
    first, _ = integrate(lambda z: -plogq(dt(z), df(z)), lo, hi, config,
                         breakpoints=breaks + zero_breaks(df, lo, hi), max_width=w.freq_panel)
    if math.isinf(first):
        return math.inf
    lo, hi = flo - fc, fhi - fc
    second, _ = integrate(lambda z: -plogq(df(z), dt(z)), lo, hi, config,
                          breakpoints=breaks + zero_breaks(dt, lo, hi), max_width=w.freq_panel)
    if math.isinf(second):
        return math.inf
    return float(np.real(first) + np.real(second))

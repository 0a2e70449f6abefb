"""Truncation windows shared by the quadrature-based modules."""

from __future__ import annotations

import numpy as np
from scipy.special import xlogy

from .catalog import effective_support

LN2 = float(np.log(2.0))


def time_window(w, config):
    """Integration interval in time, plus the energy left outside it."""
    if config.time_window is not None:
        return tuple(config.time_window), 0.0
    if w.support is not None:
        return tuple(w.support), 0.0
    frac = config.truncation_fraction
    return effective_support(w, frac, "time").time, 1.0 - frac


def freq_window(w, config):
    """Integration interval in frequency and the analytic tail beyond it.

    The tail is ``(mass, entropy, error)`` for spectra with algebraic decay,
    else ``None`` (Gaussian spectra are truncated at an effective support).
    """
    if config.freq_window is not None:
        return tuple(config.freq_window), None
    tail = w.freq_tail
    if tail is not None:
        W = config.freq_cutoff * w.freq_width
        c = w.freq_center
        return (c - W, c + W), tail(W)
    frac = config.truncation_fraction
    return effective_support(w, frac, "frequency").frequency, None


def neg_plogp(p):
    """``-p log2 p`` with ``0 log 0 = 0``."""
    return -xlogy(p, p) / LN2


def plogq(p, q):
    """``p log2 q`` with ``0 log q = 0`` and ``p log 0 = -inf`` for ``p > 0``."""
    return xlogy(p, q) / LN2


def zero_breaks(func, lo, hi, n=4001, rel=1e-8, max_zeros=100_000):
    """Interior zeros of a non-negative density ``func`` on ``[lo, hi]``.

    Used as quadrature breakpoints so that log singularities sit on panel
    edges. Every local minimum on a grid of ``n`` points is refined by
    golden-section search on ``sqrt(func)``, whose simple zeros are V-shaped
    and so resolve to machine precision; minima whose amplitude then falls
    below ``rel`` times the peak amplitude are returned. Returns an empty
    list when more than ``max_zeros`` candidates are found.
    """
    def amp(t):
        return np.sqrt(func(t))

    x = np.linspace(lo, hi, int(n))
    y = amp(x)
    peak = float(np.max(y)) if len(y) else 0.0
    if peak <= 0.0:
        return []
    idx = np.nonzero((y[1:-1] <= y[:-2]) & (y[1:-1] <= y[2:]))[0] + 1
    if len(idx) == 0 or len(idx) > max_zeros:
        return []
    a, b = x[idx - 1], x[idx + 1]
    r = (np.sqrt(5.0) - 1.0) / 2.0
    for _ in range(90):
        c, d = b - r * (b - a), a + r * (b - a)
        left = amp(c) < amp(d)
        a, b = np.where(left, a, c), np.where(left, d, b)
    z = 0.5 * (a + b)
    keep = amp(z) <= rel * peak
    return [float(v) for v in np.unique(z[keep])]

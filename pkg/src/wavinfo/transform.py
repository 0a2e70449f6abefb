"""Sampled-signal transforms: periodized DWT/IDWT and the sampled CWT.

DWT conventions
---------------
One analysis level maps ``c`` (length ``n``) to

    a[k] = sum_l h[l] c[(2k - l) mod n],   d[k] = sum_l g[l] c[(2k - l) mod n]

for ``k = 0 .. n/2 - 1``: circular convolution with the taps as stored, then
keeping the even outputs. Synthesis is the exact transpose, so the transform
is orthogonal and conserves energy to roundoff. ``details[0]`` is level 1
(finest).

CWT conventions
---------------
``CWT(a, b) = <f, psi_{a,b}>`` with unit sample spacing. ``method="direct"``
evaluates ``sum_n f[n] conj(psi((n - b) / a)) / sqrt(a)``. ``method=
"bandlimited"`` computes the same inner product for the band-limited
(sinc-interpolated) signal, which is what the resolution of identity
applies to; it differs from the direct sum only at scales whose dilated
spectrum reaches past the Nyquist frequency.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._windows import freq_window
from .catalog import OrthogonalFilterPair, effective_support, load_filter, resolve_wavelet
from .exceptions import AdmissibilityError, SignalError
from .quadrature import QuadratureConfig, integrate

__all__ = [
    "SampledSignal",
    "CoefficientPyramid",
    "Scalogram",
    "DeepLevelWarning",
    "as_signal",
    "dwt_periodized",
    "idwt_periodized",
    "dyadic_coefficients",
    "cwt",
    "admissibility_constant",
    "recommended_cwt_grid",
    "default_cwt_grid",
]


class DeepLevelWarning(UserWarning):
    """Coarsest level is shorter than the filter; periodization wraps taps."""


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Finite real sample vector; ``energy`` is the sum of squares."""

    samples: np.ndarray
    name: str = "signal"

    def __post_init__(self):
        x = np.array(self.samples, dtype=float).ravel()
        if x.size < 2:
            raise SignalError(f"signal needs at least 2 samples, got {x.size}")
        if not np.all(np.isfinite(x)):
            raise SignalError("signal contains NaN or infinite samples")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)

    def __len__(self):
        return self.samples.size

    @property
    def energy(self):
        return float(np.dot(self.samples, self.samples))

    def scaled(self, factor):
        return SampledSignal(self.samples * factor, self.name)


def as_signal(x, name="signal"):
    if isinstance(x, SampledSignal):
        return x
    return SampledSignal(np.asarray(x, dtype=float), name)


def _as_filter(p):
    return p if isinstance(p, OrthogonalFilterPair) else load_filter(p)


@dataclass(frozen=True, eq=False)
class CoefficientPyramid:
    """Approximation ``v_J`` and details ``w_1 .. w_J`` of a J-level MRA."""

    approx: np.ndarray
    details: tuple
    filter_name: str

    @property
    def levels(self):
        return len(self.details)

    @property
    def length(self):
        return self.approx.size + sum(d.size for d in self.details)

    @property
    def energy(self):
        return float(np.dot(self.approx, self.approx) + sum(np.dot(d, d) for d in self.details))

    def subbands(self):
        """``[A_J, D_J, ..., D_1]``, the column order of the information tables."""
        return [self.approx] + [self.details[j] for j in range(self.levels - 1, -1, -1)]


def _analysis(c, h, g):
    n = c.size
    idx = (2 * np.arange(n // 2)[:, None] - np.arange(h.size)[None, :]) % n
    block = c[idx]
    return block @ h, block @ g


def _synthesis(a, d, h, g):
    n = 2 * a.size
    out = np.zeros(n)
    idx = (2 * np.arange(a.size)[:, None] - np.arange(h.size)[None, :]) % n
    np.add.at(out, idx, a[:, None] * h[None, :] + d[:, None] * g[None, :])
    return out


def dwt_periodized(f, p, levels):
    """J-level periodized Mallat decomposition of ``f`` with filter pair ``p``.

    Raises
    ------
    SignalError
        If ``len(f)`` is not divisible by ``2**levels``.
    """
    f = as_signal(f)
    p = _as_filter(p)
    levels = int(levels)
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    n = len(f)
    if n % (2 ** levels):
        raise SignalError(f"signal length {n} is not divisible by 2**{levels}")
    if n // 2 ** levels < p.length:
        warnings.warn(
            f"{p.name}: coarsest level has {n // 2 ** levels} coefficients, fewer than the "
            f"{p.length} filter taps; periodization wraps the filter",
            DeepLevelWarning,
            stacklevel=2,
        )
    c = f.samples
    details = []
    for _ in range(levels):
        c, d = _analysis(c, p.h, p.g)
        details.append(d)
    return CoefficientPyramid(c, tuple(details), p.name)


def idwt_periodized(c, p=None):
    """Inverse of :func:`dwt_periodized`; ``p`` defaults to the pyramid's filter."""
    p = _as_filter(p if p is not None else c.filter_name)
    a = np.asarray(c.approx, dtype=float)
    for j in range(c.levels - 1, -1, -1):
        d = np.asarray(c.details[j], dtype=float)
        if d.size != a.size:
            raise SignalError(
                f"level {j + 1} has {d.size} detail coefficients but {a.size} approximation "
                "coefficients"
            )
        a = _synthesis(a, d, p.h, p.g)
    return SampledSignal(a)


def dyadic_coefficients(c):
    """Detail coefficients as a mapping ``(level, position) -> w``."""
    return {(j + 1, k): float(v) for j, d in enumerate(c.details) for k, v in enumerate(d)}


# --------------------------------------------------------------------------
# CWT


@dataclass(frozen=True, eq=False)
class Scalogram:
    """CWT values on a (scale, translation) grid.

    ``values[i, j] = CWT(scales[i], translations[j])``. Scales must be
    log-spaced (constant ratio); cell measures are ``a * dlog(a)`` and the
    translation step.
    """

    scales: np.ndarray
    translations: np.ndarray
    values: np.ndarray
    c_psi: float
    energy: float
    wavelet: str = ""
    method: str = "direct"

    def __post_init__(self):
        s = np.asarray(self.scales, dtype=float)
        if s.ndim != 1 or s.size < 1 or np.any(s <= 0):
            raise ValueError("scales must be a non-empty vector of positive reals")
        if s.size > 1 and np.any(np.diff(s) <= 0):
            raise ValueError("scales must be strictly increasing")
        if not (math.isfinite(self.c_psi) and self.c_psi > 0):
            raise AdmissibilityError(f"admissibility constant must be positive and finite, "
                                     f"got {self.c_psi}")

    def scale_measure(self):
        s = np.asarray(self.scales, dtype=float)
        if s.size == 1:
            return s.copy()
        # log-spaced grid: each scale owns one log step
        return s * math.log(s[-1] / s[0]) / (s.size - 1)

    def translation_measure(self):
        b = np.asarray(self.translations, dtype=float)
        if b.size == 1:
            return np.ones(1)
        return np.full(b.size, (b[-1] - b[0]) / (b.size - 1))


def _grid(values, name):
    v = np.atleast_1d(np.asarray(values, dtype=float))
    if v.size == 0:
        raise ValueError(f"{name} grid is empty")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} grid contains non-finite values")
    return v


def default_cwt_grid(n, count=32):
    """``count`` log2-spaced scales from 1 to ``n/2`` and one translation per sample."""
    return np.geomspace(1.0, max(n / 2.0, 1.0 + 1e-9), count), np.arange(n, dtype=float)


def _cwt_direct(x, w, scales, b):
    n = np.arange(x.size, dtype=float)
    out = np.empty((scales.size, b.size), dtype=complex)
    for i, a in enumerate(scales):
        arg = (n[None, :] - b[:, None]) / a
        out[i] = np.conj(w.time(arg)) @ x / math.sqrt(a)
    return out


_KERNEL_POINTS = 1 << 16


def _cwt_bandlimited(x, w, scales, b):
    # kernel k_a(u) = sqrt(a)/(2pi) int_{-pi}^{pi} conj(Psi(a w)) e^{jwu} dw sampled at
    # u = integer + frac by a trapezoid sum evaluated with one inverse FFT
    K = _KERNEL_POINTS
    n = x.size
    omega = -math.pi + 2.0 * math.pi * np.arange(K) / K
    fracs = b - np.floor(b)
    keys = np.round(fracs, 12)
    out = np.empty((scales.size, b.size), dtype=complex)
    base = np.floor(b).astype(np.int64)
    for i, a in enumerate(scales):
        spec = np.conj(w.spectrum(a * omega)) * math.sqrt(a)
        top = complex(np.conj(w.spectrum(np.array([a * math.pi])))[0]) * math.sqrt(a)
        for frac in np.unique(keys):
            sel = keys == frac
            mod = spec * np.exp(1j * omega * frac)
            # the node at -pi stands in for both ends of the trapezoid sum
            mod[0] = 0.5 * (mod[0] + top * np.exp(1j * math.pi * frac))
            ker = np.fft.ifft(mod)  # (1/K) sum_m c_m e^{2pi j m u / K}
            # e^{j omega_m u} = (-1)^u e^{2pi j m u / K} for integer u
            uu = base[sel][:, None] - np.arange(n)[None, :]
            vals = ker[uu % K] * np.where(uu % 2 == 0, 1.0, -1.0)
            out[i, sel] = vals @ x
    return out


def cwt(f, w, scales=None, translations=None, method="direct", config=None):
    """Sampled continuous wavelet transform of ``f``.

    ``scales`` default to 32 log2-spaced values from 1 to ``N/2`` and
    ``translations`` to every sample. See the module notes for ``method``.
    """
    f = as_signal(f)
    w = resolve_wavelet(w)
    dflt_s, dflt_b = default_cwt_grid(len(f))
    scales = _grid(dflt_s if scales is None else scales, "scale")
    translations = _grid(dflt_b if translations is None else translations, "translation")
    if np.any(scales <= 0):
        raise ValueError("scales must be positive")
    if method == "direct":
        vals = _cwt_direct(f.samples, w, scales, translations)
    elif method == "bandlimited":
        vals = _cwt_bandlimited(f.samples, w, scales, translations)
    else:
        raise ValueError(f"method must be 'direct' or 'bandlimited', got {method!r}")
    c_psi = admissibility_constant(w, config)
    return Scalogram(scales, translations, vals, c_psi, f.energy, w.name, method)


def admissibility_constant(w, config=None):
    """``c_psi = int |Psi(w)|^2 / |w| dw`` over the whole line.

    Raises
    ------
    AdmissibilityError
        If ``Psi(0) != 0``, so that the integral diverges.
    """
    config = config or QuadratureConfig()
    w = resolve_wavelet(w)
    at0 = abs(complex(np.ravel(w.spectrum(np.array([0.0])))[0])) ** 2
    if at0 > 1e-12:
        raise AdmissibilityError(
            f"{w.name}: |Psi(0)|^2 = {at0:.3g}; the admissibility integral diverges"
        )
    (lo, hi), tail = freq_window(w, config)

    def f(x):
        s = np.abs(w.spectrum(x)) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(x == 0.0, 0.0, s / np.abs(x))

    val, _ = integrate(f, lo, hi, config, breakpoints=[0.0], max_width=w.freq_panel)
    val = float(np.real(val))
    if tail is not None:
        # beyond the cutoff W the density decays like w^-2, so the remaining
        # mass m contributes about 2 pi m / (2 W)
        W = max(abs(lo), abs(hi))
        val += math.pi * tail[0] / W
    return val


def _positive_band(w, fraction):
    """Frequency interval on the positive axis holding most of the energy.

    Real wavelets have a mirrored band on the negative axis which probes the
    same signal frequencies.
    """
    lo, hi = effective_support(w, fraction, "frequency").frequency
    if lo < 0 < hi:
        hi = max(-lo, hi)
        # lower edge: where the positive-side cumulative mass reaches 1 - fraction
        grid = np.linspace(0.0, hi, 20001)
        dens = w.spectral_density(grid) + w.spectral_density(-grid)
        cum = np.concatenate([[0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(grid))])
        lo = float(grid[np.searchsorted(cum, (1.0 - fraction) * cum[-1])])
    return max(lo, 1e-12), hi


def recommended_cwt_grid(f, w, voices=8, span=16.0, step=1.0, fraction=1.0 - 1e-4):
    """Scale and translation grid for the sampled CWT joint density.

    Scales are log-spaced with ``voices`` per octave, from the scale at which
    the wavelet's band leaves the Nyquist range up to ``span * N`` times the
    scale at which the band centre reaches the signal's lowest DFT
    frequency. Translations run every ``step`` samples and extend past both
    ends of the signal by the time half-width of the widest atom. Doubling
    ``voices`` and halving ``step`` doubles both grid densities.
    """
    f = as_signal(f)
    w = resolve_wavelet(w)
    n = len(f)
    lo, hi = _positive_band(w, fraction)
    a_min = lo / math.pi
    a_max = span * hi * n / (2.0 * math.pi)
    octaves = math.log2(a_max / a_min)
    count = int(math.ceil(octaves * voices)) + 1
    scales = a_min * 2.0 ** (np.arange(count) / voices)
    if w.support is not None:
        tlo, thi = w.support
    else:
        tlo, thi = effective_support(w, fraction, "time").time
    reach = max(abs(tlo), abs(thi)) * scales[-1]
    first = -math.ceil(reach / step) * step
    last = (n - 1) + math.ceil(reach / step) * step
    translations = np.arange(first, last + step / 2.0, step)
    return scales, translations

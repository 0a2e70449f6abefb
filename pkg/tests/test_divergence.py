import math

import numpy as np
import pytest
from scipy import integrate as sint

from wavinfo import (ANALYTIC_NAMES, FILTER_NAMES, AnalyticWavelet, daughter,
                     divergence_from_equiprobability, effective_support, gibbs_cross_entropy,
                     kl_distance_full, kl_distance_normalized, kl_distance_time, load_wavelet,
                     resolve_wavelet, time_entropy)

CATALOG = ANALYTIC_NAMES + FILTER_NAMES


def gapped():
    # vanishes on [0, 1), so anything living there is not absolutely continuous
    def f(t):
        t = np.asarray(t, dtype=float)
        return np.where((t >= 1) & (t < 1.5), 1.0, 0.0) - np.where((t >= 1.5) & (t < 2), 1.0, 0.0)

    return AnalyticWavelet("gap", f, lambda w: np.zeros_like(w, dtype=complex),
                           support=(0.0, 2.0), time_center=1.5, time_width=2.0,
                           time_breaks=(0.0, 1.0, 1.5, 2.0))


def test_haar_daughter_literal_and_normalised():
    d = daughter(load_wavelet("haar"), 2, 0)
    lit = kl_distance_time("haar", d)
    assert lit.value == pytest.approx(1.0, abs=1e-6)
    assert lit.variant == "D1_time" and lit.lam == 2.0 and lit.mu is None
    norm = kl_distance_normalized("haar", d)
    assert norm.value == pytest.approx(0.0, abs=1e-6)
    assert norm.variant == "normalized_D1"


@pytest.mark.parametrize("name", CATALOG)
def test_self_distance_zero(name):
    assert kl_distance_time(name, name).value == pytest.approx(0.0, abs=1e-9)
    assert kl_distance_normalized(name, name).value == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("name", ["haar", "cmor", "gauss1", "db3"])
def test_full_self_distance_zero(name):
    r = kl_distance_full(name, name)
    assert r.variant == "D2_time_frequency"
    assert r.value == pytest.approx(0.0, abs=1e-6)


def test_normalised_nonnegative_all_pairs():
    worst = min(kl_distance_normalized(a, b).value for a in CATALOG for b in CATALOG)
    assert worst >= -1e-9


def test_absolute_continuity_failure():
    assert kl_distance_time("haar", gapped()).value == math.inf
    assert kl_distance_normalized("haar", gapped()).value == math.inf


def test_db2_vs_haar():
    r = kl_distance_normalized("db2", "haar")
    assert 0 < r.value < math.inf


def _kl_scipy(d1, d2, lo1, hi1, lo2, ratio, breaks=()):
    def f(x):
        p = d1(np.array([x]))[0]
        if p <= 0:
            return 0.0
        q = ratio * d2(np.array([lo2 + ratio * (x - lo1)]))[0]
        return p * math.log2(p / q)

    return sint.quad(f, lo1, hi1, points=list(breaks) or None, limit=500, epsabs=1e-11)[0]


@pytest.mark.parametrize("a,b", [("cmor", "gauss1"), ("gauss1", "cmor")])
def test_full_distance_scipy_route(a, b):
    w1, w2 = resolve_wavelet(a), resolve_wavelet(b)
    frac = 1 - 1e-4
    s1, s2 = effective_support(w1, frac), effective_support(w2, frac)
    lam = s2.time_length / s1.time_length
    mu = s2.freq_length / s1.freq_length
    t = _kl_scipy(w1.density, w2.density, *s1.time, s2.time[0], lam,
                  breaks=[s1.time[0] + (0 - s2.time[0]) / lam])
    f = _kl_scipy(w1.spectral_density, w2.spectral_density, *s1.frequency, s2.frequency[0], mu,
                  breaks=[s1.frequency[0] + (0 - s2.frequency[0]) / mu])
    r = kl_distance_full(a, b)
    assert r.lam == pytest.approx(lam, rel=1e-12) and r.mu == pytest.approx(mu, rel=1e-12)
    assert r.value == pytest.approx(t + f, abs=1e-6)


def test_full_distance_asymmetric():
    ab = kl_distance_full("cmor", "gauss1").value
    ba = kl_distance_full("gauss1", "cmor").value
    assert 0 < ab < math.inf and 0 < ba < math.inf
    assert abs(ab - ba) > 1e-3


def test_full_distance_haar_cmor_finite():
    for a, b in (("haar", "cmor"), ("cmor", "haar")):
        r = kl_distance_full(a, b)
        assert 0 <= r.value < math.inf


def test_full_literal_variant_label():
    r = kl_distance_full("cmor", "gauss1", normalized=False)
    assert r.variant == "D2_time_frequency_literal"


def test_equiprobability():
    assert divergence_from_equiprobability("haar") == pytest.approx(0.0, abs=1e-12)
    assert divergence_from_equiprobability("db1") == pytest.approx(0.0, abs=1e-12)
    assert divergence_from_equiprobability("gauss1") > 0.1


@pytest.mark.parametrize("name", CATALOG)
def test_gibbs_equality(name):
    assert gibbs_cross_entropy(name, name) == pytest.approx(time_entropy(name).value, abs=3e-3)


def test_gibbs_haar_is_one():
    assert gibbs_cross_entropy("haar", "haar") == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("a,b", [("cmor", "gauss1"), ("gauss1", "mexh"), ("mexh", "cmor"),
                                 ("morlet", "cmor"), ("haar", "db1"), ("db2", "db2")])
def test_gibbs_inequality(a, b):
    assert gibbs_cross_entropy(a, b) >= time_entropy(a).value - 3e-7


def test_gibbs_disjoint_support():
    far = daughter(load_wavelet("haar"), 1, 10)
    assert gibbs_cross_entropy("haar", far) == math.inf


def test_distance_result_float():
    assert float(kl_distance_time("haar", "haar")) == 0.0

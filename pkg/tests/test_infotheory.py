import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from wavinfo import (FILTER_NAMES, JointDensity, Scalogram, cwt, daughter, dwt_periodized,
                     joint_density_cwt, joint_density_dyadic, load_wavelet, mra_info_report,
                     mra_joint_density, mutual_info_cwt, mutual_info_dyadic, rank_wavelets,
                     recommended_cwt_grid)
from wavinfo.exceptions import CoverageError, SignalError
from wavinfo.infotheory import VARIANTS, mutual_information
from wavinfo.transform import DeepLevelWarning

positive = st.floats(0.0, 10.0, allow_nan=False)


def quiet_dwt(x, name, J):
    with np.testing.suppress_warnings() as sup:
        sup.filter(DeepLevelWarning)
        return dwt_periodized(x, name, J)


# --------------------------------------------------------------------------
# discrete MI


def test_diagonal_is_one_bit():
    assert mutual_information(np.array([[0.5, 0.0], [0.0, 0.5]])) == 1.0


@given(arrays(float, 4, elements=positive), arrays(float, 3, elements=positive))
def test_factorizable_grid_has_no_information(u, v):
    if u.sum() == 0 or v.sum() == 0:
        return
    p = np.outer(u / u.sum(), v / v.sum())
    assert abs(mutual_information(p / p.sum())) < 1e-12


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_matches_brute_force(brute_mi, rows, cols, data):
    p = data.draw(arrays(float, (rows, cols), elements=positive))
    if p.sum() == 0:
        return
    p = p / p.sum()
    mi = mutual_information(p)
    assert mi >= -1e-12
    assert mi == pytest.approx(brute_mi(p), abs=1e-12)


def test_tiny_marginals_do_not_underflow(brute_mi):
    t = 2.2250738585e-313
    p = np.array([[1.0, t], [t, t]])
    p /= p.sum()
    mi = mutual_information(p)
    assert math.isfinite(mi) and mi == pytest.approx(brute_mi(p), abs=1e-12)


def test_mi_rejects_bad_input():
    with pytest.raises(ValueError):
        mutual_information(np.ones(3))
    with pytest.raises(ValueError):
        mutual_information(np.array([[0.5, -0.1], [0.3, 0.3]]))
    with pytest.raises(ValueError):
        JointDensity("mra_subband", np.ones((2, 2)), (0,), (0, 1))
    with pytest.raises(ValueError):
        JointDensity("spiral", np.ones((1, 1)), (0,), (0,))


# --------------------------------------------------------------------------
# dyadic


def test_dyadic_mapping_and_array_agree(x1):
    c = quiet_dwt(x1, "db2", 3)
    arr = np.zeros((3, 8))
    mapping = {}
    for j, d in enumerate(c.details, start=1):
        arr[j - 1, :d.size] = d
        mapping.update({(j, k): v for k, v in enumerate(d)})
    a = mutual_info_dyadic(arr)
    b = mutual_info_dyadic(mapping)
    assert a == pytest.approx(b, abs=1e-12)
    d = joint_density_dyadic(mapping)
    assert d.coverage == pytest.approx(1.0, abs=1e-12)


def test_dyadic_zero_energy():
    with pytest.raises(SignalError):
        joint_density_dyadic(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        joint_density_dyadic({})


# --------------------------------------------------------------------------
# MRA


def test_x1_db1_masses(x1):
    d = mra_joint_density(dwt_periodized(x1, "db1", 1))
    assert d.col_labels == ("A", "D1")
    np.testing.assert_allclose(d.masses[:, 0], 200 / 1616, atol=1e-15)
    np.testing.assert_allclose(d.masses[:, 1], 2 / 1616, atol=1e-15)
    assert d.coverage == pytest.approx(1.0, abs=1e-12)


def test_x1_single_level_is_degenerate(x1):
    r = mra_info_report(dwt_periodized(x1, "db1", 1))
    assert abs(r.approximation) < 1e-12 and abs(r.total) < 1e-12
    assert r.degenerate and r.percentages == (0.0, 100.0)


@pytest.mark.parametrize("name", FILTER_NAMES)
@pytest.mark.parametrize("J", [1, 2, 3])
@pytest.mark.parametrize("variant", VARIANTS)
def test_dc_carries_no_approximation_info(name, J, variant, dc16):
    r = mra_info_report(quiet_dwt(dc16, name, J), variant)
    assert abs(r.approximation) < 1e-12


def test_literal_single_level_is_zero(x3):
    for name in FILTER_NAMES:
        r = mra_info_report(quiet_dwt(x3, name, 1), "literal")
        assert abs(r.total) < 1e-12


def test_literal_unnormalized_total(x1):
    r = mra_info_report(dwt_periodized(x1, "db1", 2), "literal")
    assert r.unnormalized_total is not None and r.unnormalized_total < 0 < r.total
    assert mra_info_report(dwt_periodized(x1, "db1", 2)).unnormalized_total is None


@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("J", [2, 3])
def test_percentages_and_detail_share(x1, x3, variant, J):
    for sig in (x1, x3):
        for name in FILTER_NAMES:
            r = mra_info_report(quiet_dwt(sig, name, J), variant)
            assert r.total >= -1e-12
            assert sum(r.percentages) == pytest.approx(100.0, abs=0.1)
            assert math.fsum(r.subband_bits) == pytest.approx(r.total, abs=1e-12)
    rep = mra_info_report(quiet_dwt(x1, "db2", J), variant)
    assert rep.percentages[-1] > 50.0
    assert rep.detail(1) == rep.subband_bits[-1]
    with pytest.raises(ValueError):
        rep.detail(J + 1)


@given(arrays(float, 16, elements=st.floats(-100, 100)), st.sampled_from(FILTER_NAMES),
       st.integers(1, 3), st.sampled_from(VARIANTS))
def test_mra_properties(brute_mi, x, name, J, variant):
    if float(x @ x) < 1e-6:
        return
    c = quiet_dwt(x, name, J)
    r = mra_info_report(c, variant)
    assert r.total >= -1e-12
    d = mra_joint_density(c, variant)
    if d.masses.size <= 16:
        assert r.total == pytest.approx(brute_mi(d.masses / d.coverage), abs=1e-12)
    scaled = mra_info_report(quiet_dwt(7.3 * x, name, J), variant)
    assert np.max(np.abs(np.subtract(scaled.subband_bits, r.subband_bits))) <= 1e-12
    assert abs(scaled.total - r.total) <= 1e-12


def test_report_dict(x3):
    r = mra_info_report(quiet_dwt(x3, "db2", 2))
    d = r.to_dict()
    assert [s["name"] for s in d["subbands"]] == ["Approx", "Detail 2", "Detail 1"]
    assert d["total"] == r.total


def test_zero_pyramid_rejected():
    with pytest.raises(SignalError):
        mra_joint_density(dwt_periodized(np.zeros(8), "db1", 1))
    with pytest.raises(ValueError):
        mra_joint_density(dwt_periodized(np.ones(8), "db1", 1), "both")


@pytest.mark.filterwarnings("ignore::wavinfo.transform.DeepLevelWarning")
def test_rank_orders(x1, dc16):
    ranked = rank_wavelets(dc16, levels=3)
    assert [n for n, _ in ranked] == list(FILTER_NAMES)
    assert all(abs(t) < 1e-12 for _, t in ranked)
    r1 = rank_wavelets(x1, levels=1)
    assert min(t for _, t in r1) == pytest.approx(dict(r1)["db1"], abs=1e-12)
    top = rank_wavelets(np.sin(np.arange(32.0)), ["db1", "db4"], levels=2)
    assert top[0][1] >= top[1][1]


# --------------------------------------------------------------------------
# CWT


@pytest.fixture(scope="module")
def x3_cwt(x3):
    s, t = recommended_cwt_grid(x3, "cmor")
    return joint_density_cwt(cwt(x3, "cmor", s, t, method="bandlimited"))


def test_cwt_marginals_consistent(x3_cwt):
    d = x3_cwt
    assert d.kind == "cwt_grid"
    assert d.coverage <= 1 + 1e-9
    assert d.row_marginals.sum() == pytest.approx(d.coverage, rel=1e-12)
    assert d.col_marginals.sum() == pytest.approx(d.coverage, rel=1e-12)


def test_cwt_energy_proxy(x3_cwt):
    assert 0.90 <= x3_cwt.coverage <= 1.02
    assert mutual_info_cwt(x3_cwt) >= -1e-12


def test_cwt_amplitude_invariance(x3):
    s, t = recommended_cwt_grid(x3, "cmor")
    a = joint_density_cwt(cwt(x3, "cmor", s, t, method="bandlimited"))
    b = joint_density_cwt(cwt(x3.scaled(2.0), "cmor", s, t, method="bandlimited"))
    np.testing.assert_allclose(b.masses, a.masses, atol=1e-15)
    c = joint_density_cwt(cwt(x3.scaled(7.3), "cmor", s, t, method="bandlimited"))
    assert abs(c.mutual_information() - a.mutual_information()) <= 1e-12


def test_cwt_grid_doubling_is_stable(x3, x3_cwt):
    s, t = recommended_cwt_grid(x3, "cmor", voices=16, step=0.5)
    d = joint_density_cwt(cwt(x3, "cmor", s, t, method="bandlimited"))
    m1, m2 = mutual_info_cwt(x3_cwt), mutual_info_cwt(d)
    assert abs(m2 - m1) / m1 < 0.05


def test_matched_morlet_atom():
    n = np.arange(128.0)
    f = np.real(daughter(load_wavelet("morlet"), 4, 64).time(n))
    s, t = recommended_cwt_grid(f, "morlet")
    d = joint_density_cwt(cwt(f, "morlet", s, t, method="bandlimited"))
    assert 0.90 <= d.coverage <= 1 + 1e-6


def test_separable_scalogram_has_no_information():
    scales = 2.0 ** np.arange(5)
    trans = np.arange(7.0)
    vals = np.outer(np.linspace(1, 2, 5), np.cos(trans) + 2)
    d = joint_density_cwt(Scalogram(scales, trans, vals, 1.0, 1.0))
    # masses carry a 1/a factor per row, which still factorises
    assert abs(d.mutual_information()) < 1e-12


def test_coverage_errors():
    scales = np.array([1.0, 2.0])
    trans = np.arange(3.0)
    low = joint_density_cwt(Scalogram(scales, trans, np.full((2, 3), 0.01), 1.0, 1.0))
    with pytest.raises(CoverageError):
        mutual_info_cwt(low)
    high = joint_density_cwt(Scalogram(scales, trans, np.full((2, 3), 10.0), 1.0, 1.0))
    with pytest.raises(CoverageError):
        mutual_info_cwt(high)
    with pytest.raises(SignalError):
        joint_density_cwt(Scalogram(scales, trans, np.zeros((2, 3)), 1.0, 0.0))

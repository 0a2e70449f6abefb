"""scikit-learn style wrappers: each row of ``X`` is one sampled signal."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .catalog import FILTER_NAMES, load_filter
from .infotheory import VARIANTS, mra_info_report, rank_wavelets
from .transform import CoefficientPyramid, dwt_periodized, idwt_periodized

__all__ = ["MRADecomposer", "MRAInformation", "WaveletSelector"]


def _check_levels(levels, n_features):
    if int(levels) < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    if n_features % (2 ** int(levels)):
        raise ValueError(f"signal length {n_features} is not divisible by 2**{levels}")


class _SignalTransformer(TransformerMixin, BaseEstimator):
    def _validate(self, X, reset):
        X = check_array(X, dtype=float, ensure_min_features=2)
        if reset:
            self.n_features_in_ = X.shape[1]
        elif X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but {type(self).__name__} was fitted "
                f"with {self.n_features_in_}"
            )
        return X


class MRADecomposer(_SignalTransformer):
    """Periodized MRA as a transformer.

    ``transform`` returns, per row, the coefficients ``A_J, D_J, ..., D_1``
    concatenated; ``inverse_transform`` rebuilds the signals.
    """

    def __init__(self, wavelet="db2", levels=1):
        self.wavelet = wavelet
        self.levels = levels

    def fit(self, X, y=None):
        X = self._validate(X, reset=True)
        _check_levels(self.levels, X.shape[1])
        self.filter_ = load_filter(self.wavelet)
        n = X.shape[1]
        self.band_sizes_ = [n >> self.levels] + [n >> j for j in range(self.levels, 0, -1)]
        return self

    def transform(self, X):
        check_is_fitted(self, "filter_")
        X = self._validate(X, reset=False)
        rows = []
        for x in X:
            c = dwt_periodized(x, self.filter_, self.levels)
            rows.append(np.concatenate(c.subbands()))
        return np.vstack(rows)

    def inverse_transform(self, X):
        check_is_fitted(self, "filter_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} coefficients per row, "
                             f"got {X.shape[1]}")
        edges = np.cumsum([0] + self.band_sizes_)
        out = []
        for row in X:
            bands = [row[edges[i]:edges[i + 1]] for i in range(len(self.band_sizes_))]
            # bands run A_J, D_J .. D_1; the pyramid keeps details finest first
            pyr = CoefficientPyramid(bands[0], tuple(bands[:0:-1]), self.filter_.name)
            out.append(idwt_periodized(pyr, self.filter_).samples)
        return np.vstack(out)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "filter_")
        names = []
        labels = ["A"] + [f"D{j}" for j in range(self.levels, 0, -1)]
        for lab, size in zip(labels, self.band_sizes_):
            names.extend(f"{lab}_{k}" for k in range(size))
        return np.asarray(names, dtype=object)


class MRAInformation(_SignalTransformer):
    """Per-subband information of each row.

    Output columns: ``Approx, Detail J, ..., Detail 1, Total`` in bits.
    """

    def __init__(self, wavelet="db2", levels=1, variant="subband_primary"):
        self.wavelet = wavelet
        self.levels = levels
        self.variant = variant

    def fit(self, X, y=None):
        X = self._validate(X, reset=True)
        _check_levels(self.levels, X.shape[1])
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        self.filter_ = load_filter(self.wavelet)
        return self

    def transform(self, X):
        check_is_fitted(self, "filter_")
        X = self._validate(X, reset=False)
        out = []
        for x in X:
            rep = mra_info_report(dwt_periodized(x, self.filter_, self.levels), self.variant)
            out.append(list(rep.subband_bits) + [rep.total])
        return np.asarray(out)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "filter_")
        return np.asarray(["Approx"] + [f"Detail {j}" for j in range(self.levels, 0, -1)]
                          + ["Total"], dtype=object)


class WaveletSelector(_SignalTransformer):
    """Picks the filter whose MRA yields the most information on average.

    After ``fit``, ``scores_`` maps filter name to the mean total bits over
    the rows, ``ranking_`` lists names best first (ties in catalog order)
    and ``best_`` is the winner. ``transform`` decomposes with ``best_``.
    """

    def __init__(self, filters=None, levels=1, variant="subband_primary"):
        self.filters = filters
        self.levels = levels
        self.variant = variant

    def fit(self, X, y=None):
        X = self._validate(X, reset=True)
        _check_levels(self.levels, X.shape[1])
        names = list(FILTER_NAMES if self.filters is None else self.filters)
        totals = {n: 0.0 for n in names}
        for x in X:
            for name, total in rank_wavelets(x, names, self.levels, self.variant):
                totals[name] += total / X.shape[0]
        order = {n: i for i, n in enumerate(names)}
        self.scores_ = totals
        self.ranking_ = sorted(names, key=lambda n: (-round(totals[n], 12), order[n]))
        self.best_ = self.ranking_[0]
        self.decomposer_ = MRADecomposer(self.best_, self.levels).fit(X)
        return self

    def transform(self, X):
        check_is_fitted(self, "decomposer_")
        return self.decomposer_.transform(X)

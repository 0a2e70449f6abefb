"""Joint signal-wavelet densities and mutual information.

Three joints are built from transform coefficients:

* CWT grid: cell ``(a_i, b_j)`` carries ``2 |CWT|^2 da db / (E c_psi a^2)``.
  With ``c_psi`` taken over the whole frequency line, a real signal analysed
  over positive scales has total mass one; the factor two accounts for the
  half line of scales. Truncating the grid loses mass, reported as
  ``coverage``.
* Dyadic grid: detail ``w_{n,m}`` carries ``|w_{n,m}|^2 / E``.
* MRA subbands, two variants:

  ``"subband_primary"``
      outcomes are (position ``k``, subband) over the columns
      ``A_J, D_J, ..., D_1`` with mass ``|coefficient|^2 / E``; positions
      index each subband's own coefficients, so short subbands leave the
      high positions empty.
  ``"literal"``
      outcomes are (``k``, level ``j``) with mass
      ``(|v_{k,J}|^2 / J + |w_{k,j}|^2) / E``, the approximation being shared
      equally among the levels. Its information uses the joint's own
      marginals. The sum taken instead against ``sum_k (|v_k|^2 + |w_{k,j}|^2) / E``
      and ``(|v_k|^2 + sum_j |w_{k,j}|^2) / E``, which drop the ``1/J``, is
      kept as ``unnormalized_total``; those weights do not sum to one for
      ``J > 1`` and the sum can be negative.

Per-subband information is the sum of the MI terms ``p log2(p / (p_k p_s))``
whose outcome lies in that subband; single contributions can be negative
although the total is not. In the literal variant each term is split
between the approximation and the detail in proportion to their shares of
the cell mass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .catalog import FILTER_NAMES, load_filter
from .exceptions import CoverageError, SignalError
from .transform import as_signal, dwt_periodized

__all__ = [
    "JointDensity",
    "InfoReport",
    "VARIANTS",
    "mi_terms",
    "mutual_information",
    "joint_density_cwt",
    "mutual_info_cwt",
    "joint_density_dyadic",
    "mutual_info_dyadic",
    "mra_joint_density",
    "mra_info_report",
    "rank_wavelets",
]

VARIANTS = ("subband_primary", "literal")
_KINDS = ("cwt_grid", "dyadic_grid", "mra_subband")


def mi_terms(p, row=None, col=None):
    """Elementwise ``p log2(p / (row * col))`` with ``0 log 0 = 0``.

    Marginals default to the row and column sums of ``p``.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 2:
        raise ValueError(f"joint must be a 2-D array, got shape {p.shape}")
    if np.any(p < 0):
        raise ValueError("joint masses must be non-negative")
    row = p.sum(axis=1) if row is None else np.asarray(row, dtype=float)
    col = p.sum(axis=0) if col is None else np.asarray(col, dtype=float)
    out = np.zeros_like(p)
    nz = p > 0
    # separate logs: the product of two tiny marginals can underflow
    r = np.broadcast_to(row[:, None], p.shape)[nz]
    c = np.broadcast_to(col[None, :], p.shape)[nz]
    out[nz] = p[nz] * (np.log2(p[nz]) - np.log2(r) - np.log2(c))
    return out


def mutual_information(p, row=None, col=None):
    """Mutual information in bits of a normalised 2-D joint mass array."""
    return float(np.sum(mi_terms(p, row, col)))


@dataclass(frozen=True, eq=False)
class JointDensity:
    """Joint mass over ``rows x cols`` outcomes.

    ``masses[i, j]`` is the probability of ``(row_labels[i], col_labels[j])``.
    ``coverage`` is the total mass (below one when a CWT grid truncates).
    ``row_weights``/``col_weights`` are alternative marginals used only by
    :meth:`weighted_sum` (the literal MRA variant sets them).
    """

    kind: str
    masses: np.ndarray
    row_labels: tuple
    col_labels: tuple
    variant: str = ""
    row_weights: np.ndarray | None = field(default=None, repr=False)
    col_weights: np.ndarray | None = field(default=None, repr=False)
    split: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        m = np.array(self.masses, dtype=float)
        if m.ndim != 2 or m.shape != (len(self.row_labels), len(self.col_labels)):
            raise ValueError("masses shape does not match the labels")
        if np.any(m < 0) or not np.all(np.isfinite(m)):
            raise ValueError("joint masses must be finite and non-negative")
        m.setflags(write=False)
        object.__setattr__(self, "masses", m)

    @property
    def coverage(self):
        return float(self.masses.sum())

    @cached_property
    def row_marginals(self):
        return self.masses.sum(axis=1)

    @cached_property
    def col_marginals(self):
        return self.masses.sum(axis=0)

    @property
    def shape(self):
        return self.masses.shape

    def cells(self):
        """Mapping ``(row_label, col_label) -> mass`` over every cell."""
        return {(r, c): float(self.masses[i, j])
                for i, r in enumerate(self.row_labels) for j, c in enumerate(self.col_labels)}

    def terms(self):
        """MI terms per cell after renormalising to unit mass."""
        total = self.coverage
        if not total > 0:
            raise SignalError("joint density has zero mass")
        return mi_terms(self.masses / total)

    def mutual_information(self):
        return float(np.sum(self.terms()))

    def weighted_sum(self):
        """``sum p log2(p / (r c))`` against ``row_weights``/``col_weights``."""
        if self.row_weights is None:
            return self.mutual_information()
        return float(np.sum(mi_terms(self.masses, self.row_weights, self.col_weights)))


# --------------------------------------------------------------------------
# CWT


def joint_density_cwt(s):
    """Cell masses of a scalogram; see the module notes for the normalisation."""
    if not s.energy > 0:
        raise SignalError("signal energy is zero; the joint density is undefined")
    a = np.asarray(s.scales, dtype=float)
    cell = np.outer(s.scale_measure() / a ** 2, s.translation_measure())
    m = 2.0 * np.abs(s.values) ** 2 * cell / (s.energy * s.c_psi)
    return JointDensity("cwt_grid", m, tuple(a.tolist()),
                        tuple(np.asarray(s.translations, dtype=float).tolist()))


def mutual_info_cwt(d, min_coverage=0.85):
    """MI of a CWT joint after renormalising its captured mass to one.

    Raises
    ------
    CoverageError
        If the grid captures less than ``min_coverage`` of the energy, or
        more than all of it (a sign of aliasing at the smallest scales).
    """
    cov = d.coverage
    if cov < min_coverage:
        raise CoverageError(
            f"grid captures {cov:.4f} of the signal energy, below the minimum "
            f"{min_coverage}; widen the scale range or the translation span"
        )
    if cov > 1.0 + 1e-3:
        raise CoverageError(
            f"grid mass {cov:.4f} exceeds 1; the smallest scales alias, use "
            "method='bandlimited' or drop scales below the Nyquist band"
        )
    return d.mutual_information()


# --------------------------------------------------------------------------
# dyadic


def _dyadic_array(coeffs):
    if isinstance(coeffs, dict):
        if not coeffs:
            raise ValueError("coefficient mapping is empty")
        rows = sorted({n for n, _ in coeffs})
        cols = sorted({m for _, m in coeffs})
        ri = {n: i for i, n in enumerate(rows)}
        ci = {m: j for j, m in enumerate(cols)}
        arr = np.zeros((len(rows), len(cols)))
        for (n, m), v in coeffs.items():
            arr[ri[n], ci[m]] = abs(v) ** 2
        return arr, tuple(rows), tuple(cols)
    w = np.asarray(coeffs)
    if w.ndim != 2 or w.size == 0:
        raise ValueError("coefficients must be a mapping or a non-empty 2-D array")
    return np.abs(w) ** 2, tuple(range(w.shape[0])), tuple(range(w.shape[1]))


def joint_density_dyadic(coeffs):
    """``|w_{n,m}|^2 / E`` from a mapping ``(n, m) -> w`` or a 2-D array."""
    sq, rows, cols = _dyadic_array(coeffs)
    E = sq.sum()
    if not E > 0:
        raise SignalError("coefficients carry no energy")
    return JointDensity("dyadic_grid", sq / E, rows, cols)


def mutual_info_dyadic(coeffs):
    """Mutual information of the dyadic joint ``|w_{n,m}|^2 / E``."""
    return joint_density_dyadic(coeffs).mutual_information()


# --------------------------------------------------------------------------
# MRA


def mra_joint_density(c, variant="subband_primary"):
    """Joint density over positions and subbands of a coefficient pyramid."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    E = c.energy
    if not E > 0:
        raise SignalError("pyramid energy is zero; the joint density is undefined")
    J = c.levels
    rows = max(b.size for b in c.subbands())
    if variant == "subband_primary":
        m = np.zeros((rows, J + 1))
        for j, band in enumerate(c.subbands()):
            m[:band.size, j] = np.asarray(band, dtype=float) ** 2
        labels = ("A",) + tuple(f"D{j}" for j in range(J, 0, -1))
        return JointDensity("mra_subband", m / E, tuple(range(rows)), labels, variant)
    v2 = np.zeros(rows)
    v2[:c.approx.size] = np.asarray(c.approx, dtype=float) ** 2
    w2 = np.zeros((rows, J))
    for j, d in enumerate(c.details):
        w2[:d.size, j] = np.asarray(d, dtype=float) ** 2
    approx_part = np.repeat(v2[:, None] / J, J, axis=1)
    m = (approx_part + w2) / E
    col_w = (v2.sum() + w2.sum(axis=0)) / E
    row_w = (v2 + w2.sum(axis=1)) / E
    with np.errstate(invalid="ignore", divide="ignore"):
        share = np.where(m > 0, approx_part / E / m, 0.0)
    return JointDensity("mra_subband", m, tuple(range(rows)),
                        tuple(f"D{j}" for j in range(1, J + 1)), variant,
                        row_weights=row_w, col_weights=col_w, split=share)


@dataclass(frozen=True)
class InfoReport:
    """Per-subband information of an MRA, in the column order of the tables.

    ``subband_bits[i]`` belongs to ``subband_labels[i]``, which run
    ``Approx, Detail J, ..., Detail 1``.
    """

    wavelet: str
    levels: int
    subband_labels: tuple
    subband_bits: tuple
    total: float
    variant: str
    unnormalized_total: float | None = None

    @property
    def approximation(self):
        return self.subband_bits[0]

    def detail(self, level):
        """Bits carried by the detail subband of ``level`` (1 = finest)."""
        if not 1 <= level <= self.levels:
            raise ValueError(f"level must lie in 1..{self.levels}, got {level}")
        return self.subband_bits[1 + self.levels - level]

    @property
    def degenerate(self):
        # no information at all: shares are undefined
        return abs(self.total) <= 1e-15

    @property
    def percentages(self):
        """Share of the total per subband.

        When the total vanishes the shares are undefined; the finest detail
        then takes the whole 100 so that the column still sums to 100.
        """
        if self.degenerate:
            return tuple(0.0 for _ in self.subband_bits[:-1]) + (100.0,)
        return tuple(100.0 * b / self.total for b in self.subband_bits)

    def to_dict(self):
        return {
            "wavelet": self.wavelet,
            "levels": self.levels,
            "variant": self.variant,
            "subbands": [
                {"name": n, "bits": b, "percent": p}
                for n, b, p in zip(self.subband_labels, self.subband_bits, self.percentages)
            ],
            "total": self.total,
            "unnormalized_total": self.unnormalized_total,
        }


def mra_info_report(c, variant="subband_primary"):
    """Information per subband and in total for a coefficient pyramid."""
    d = mra_joint_density(c, variant)
    t = d.terms()
    J = c.levels
    labels = ("Approx",) + tuple(f"Detail {j}" for j in range(J, 0, -1))
    printed = None
    if variant == "subband_primary":
        bits = t.sum(axis=0)
    else:
        printed = d.weighted_sum()
        approx = float(np.sum(t * d.split))
        # columns of the literal joint run D1..DJ; the report runs DJ..D1
        det = (t * (1.0 - d.split)).sum(axis=0)[::-1]
        bits = np.concatenate([[approx], det])
    return InfoReport(c.filter_name, J, labels, tuple(float(b) for b in bits),
                      float(np.sum(t)), variant, printed)


def rank_wavelets(f, filters=None, levels=1, variant="subband_primary"):
    """Filters ordered by total MRA information, most informative first.

    Totals are compared after rounding to 12 decimals so that roundoff does
    not reorder ties; ties keep catalog order.
    """
    f = as_signal(f)
    names = list(FILTER_NAMES if filters is None else filters)
    order = {n: i for i, n in enumerate(FILTER_NAMES)}
    rows = []
    for pos, name in enumerate(names):
        p = load_filter(name)
        rep = mra_info_report(dwt_periodized(f, p, levels), variant)
        rows.append((name, rep.total, order.get(p.name, len(order) + pos)))
    rows.sort(key=lambda r: (-round(r[1], 12), r[2]))
    return [(n, t) for n, t, _ in rows]

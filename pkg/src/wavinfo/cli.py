"""Command-line front end: ``wavinfo <command> [options]``.

Exit status is 0 on success, 1 on usage errors (bad flags, unknown names)
and 2 when a computation or an input file fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .catalog import (ANALYTIC_NAMES, FILTER_NAMES, daughter, list_catalog, load_filter,
                      resolve_wavelet)
from .crossdensity import cross_density
from .divergence import (divergence_from_equiprobability, gibbs_cross_entropy,
                         kl_distance_full, kl_distance_normalized, kl_distance_time)
from .entropy import entropy_upper_bound, frequency_entropy, mra_entropy, time_entropy
from .exceptions import UnknownWaveletError, WaveletError
from .infotheory import (VARIANTS, joint_density_cwt, mra_info_report, mra_joint_density,
                         mutual_info_cwt, rank_wavelets)
from .quadrature import QuadratureConfig
from .reference import reference_rows
from .transform import SampledSignal, cwt, dwt_periodized, recommended_cwt_grid

__all__ = ["main", "run", "RunConfig", "ingest_signal", "UsageError"]

FORMATS = ("table", "csv", "json")
COMMANDS = ("catalog", "entropy", "mra-entropy", "distance", "mra-info", "cwt-mi", "rank")
BUNDLED = ("x1.csv", "dc16.csv", "x3.json")
DISTANCES = ("literal", "normalized", "full", "full-literal", "gibbs", "equiprobability")


class UsageError(Exception):
    """Bad command line; maps to exit status 1."""


# --------------------------------------------------------------------------
# input


def _bundled_path(name):
    root = resources.files("wavinfo") / "data" / "signals"
    for cand in (name, f"{name}.csv", f"{name}.json"):
        p = root / cand
        if p.is_file():
            return p
    return None


def ingest_signal(path):
    """Read a signal from CSV (one number per line, '#' comments) or a JSON array.

    A bare bundled name (``x1``, ``dc16.csv``, ``x3.json``) is accepted when no
    such file exists locally.
    """
    p = Path(path)
    if not p.is_file():
        bundled = _bundled_path(str(path))
        if bundled is None:
            raise FileNotFoundError(f"signal file not found: {path}")
        text, suffix, stem = bundled.read_text(), Path(bundled.name).suffix, Path(bundled.name).stem
    else:
        text, suffix, stem = p.read_text(), p.suffix, p.stem
    if suffix.lower() == ".json" or text.lstrip().startswith("["):
        values = _parse_json(text, path)
    else:
        values = _parse_csv(text, path)
    if len(values) == 0:
        raise ValueError(f"{path}: signal is empty")
    return SampledSignal(np.asarray(values, dtype=float), stem)


def _parse_csv(text, path):
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip().rstrip(",").strip()
        if not line:
            continue
        try:
            v = float(line)
        except ValueError:
            raise ValueError(f"{path}: line {lineno}: cannot parse {line!r} as a number") from None
        if not math.isfinite(v):
            raise ValueError(f"{path}: line {lineno}: non-finite value {line!r}")
        values.append(v)
    return values


def _parse_json(text, path):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: line {exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, list):
        raise ValueError(f"{path}: expected a flat JSON array of numbers")
    values = []
    for i, v in enumerate(data):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValueError(f"{path}: element {i} is not a number: {v!r}")
        if not math.isfinite(v):
            raise ValueError(f"{path}: element {i} is not finite")
        values.append(float(v))
    return values


def _reference_key(signal):
    # reference values exist for the bundled x1 and x3 only
    for name in ("x1", "x3"):
        ref = ingest_signal(name)
        if len(ref) == len(signal) and np.array_equal(ref.samples, signal.samples):
            return name
    return None


# --------------------------------------------------------------------------
# output


@dataclass
class Table:
    columns: list
    rows: list = field(default_factory=list)
    title: str = ""


def _clean(x):
    # hide roundoff-level noise and negative zero in human-readable output
    if isinstance(x, float) and abs(x) < 1e-12:
        return 0.0
    return x


def _fmt(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{_clean(x):.6g}"
    return "" if x is None else str(x)


def _fmt_pct(x):
    return f"{_clean(x):.1f}"


def emit(tables, fmt, out):
    if fmt == "json":
        payload = [{"title": t.title, "rows": [dict(zip(t.columns, r)) for r in t.rows]}
                   for t in tables]
        out.write(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2,
                             allow_nan=True))
        out.write("\n")
        return
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        for i, t in enumerate(tables):
            if i:
                out.write("\n")
            w.writerow(t.columns)
            for r in t.rows:
                w.writerow([repr(v) if isinstance(v, float) else ("" if v is None else v)
                            for v in r])
        return
    for i, t in enumerate(tables):
        if i:
            out.write("\n")
        if t.title:
            out.write(t.title + "\n")
        cells = [[_fmt(v) for v in r] for r in t.rows]
        widths = [max([len(c)] + [len(r[j]) for r in cells]) for j, c in enumerate(t.columns)]
        out.write("  ".join(c.ljust(wd) for c, wd in zip(t.columns, widths)).rstrip() + "\n")
        for r in cells:
            out.write("  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() + "\n")


# --------------------------------------------------------------------------
# configuration


@dataclass
class RunConfig:
    command: str
    fmt: str = "table"
    wavelets: list = field(default_factory=list)
    second: str | None = None
    levels: int = 1
    variant: str = "subband_primary"
    signal: str | None = None
    domain: str = "all"
    scale: float = 1.0
    shift: float = 0.0
    taps: str = "g"
    distance: str = "literal"
    compare: bool = False
    upper_bound: bool = False
    cross: bool = False
    min_coverage: float = 0.85
    voices: int = 8
    span: float = 16.0
    step: float = 1.0
    method: str = "bandlimited"
    dump: str | None = None
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)


def _names(values, allowed, kind):
    out = []
    for v in values or []:
        for name in str(v).split(","):
            name = name.strip().lower()
            if not name:
                continue
            if name not in allowed and not (kind == "filter" and name == "haar"):
                raise UsageError(f"unknown {kind} {name!r}; available: {', '.join(allowed)}")
            out.append(name)
    return out


# --------------------------------------------------------------------------
# commands


def _cmd_catalog(cfg):
    t = Table(["name", "kind", "length", "note", "description"], title="catalog")
    for e in list_catalog():
        t.rows.append([e.name, e.kind, e.length, e.note, e.description])
    return [t]


def _cmd_entropy(cfg):
    names = cfg.wavelets or list(ANALYTIC_NAMES)
    cols = ["wavelet", "a", "b"]
    want = ("time", "frequency", "global") if cfg.domain == "all" else (cfg.domain,)
    cols += list(want)
    if cfg.upper_bound:
        cols.append("upper_bound")
    if cfg.cross:
        cols += ["cross_term", "mixed_inner_product", "abs_bound"]
    t = Table(cols, title="wavelet entropies (bits)")
    for name in names:
        w = resolve_wavelet(name)
        if cfg.scale != 1.0 or cfg.shift != 0.0:
            w = daughter(w, cfg.scale, cfg.shift)
        ht = time_entropy(w, cfg.quad).value if cfg.domain != "frequency" else None
        hf = frequency_entropy(w, cfg.quad).value if cfg.domain != "time" else None
        vals = {"time": ht, "frequency": hf,
                "global": None if ht is None or hf is None else ht + hf}
        row = [name, cfg.scale, cfg.shift] + [vals[k] for k in want]
        if cfg.upper_bound:
            row.append(entropy_upper_bound(w, cfg.quad))
        if cfg.cross:
            r = cross_density(w, cfg.quad)
            row += [r.cross_term, r.mixed_inner_product, r.abs_bound]
        t.rows.append(row)
    return [t]


def _cmd_mra_entropy(cfg):
    names = cfg.wavelets or list(FILTER_NAMES)
    t = Table(["filter", "taps", "entropy"], title="MRA entropy (bits)")
    for name in names:
        p = load_filter(name)
        taps = ("g", "h") if cfg.taps == "both" else (cfg.taps,)
        for tp in taps:
            t.rows.append([name, tp, mra_entropy(p, tp)])
    return [t]


def _cmd_distance(cfg):
    if len(cfg.wavelets) != 1 or cfg.second is None and cfg.distance != "equiprobability":
        raise UsageError("distance needs --wavelet W1 and --against W2")
    w1 = cfg.wavelets[0]
    t = Table(["w1", "w2", "variant", "value", "lambda", "mu"], title="wavelet distance (bits)")
    q = cfg.quad
    if cfg.distance == "literal":
        r = kl_distance_time(w1, cfg.second, q)
    elif cfg.distance == "normalized":
        r = kl_distance_normalized(w1, cfg.second, q)
    elif cfg.distance == "full":
        r = kl_distance_full(w1, cfg.second, q)
    elif cfg.distance == "full-literal":
        r = kl_distance_full(w1, cfg.second, q, normalized=False)
    elif cfg.distance == "gibbs":
        t.rows.append([w1, cfg.second, "gibbs_cross_entropy",
                       gibbs_cross_entropy(w1, cfg.second, q), None, None])
        return [t]
    else:
        t.rows.append([w1, "haar", "equiprobability",
                       divergence_from_equiprobability(w1, q), None, None])
        return [t]
    t.rows.append([w1, cfg.second, r.variant, r.value, r.lam, r.mu])
    return [t]


def _info_columns(levels):
    return ["Approx"] + [f"Detail {j}" for j in range(levels, 0, -1)]


def _info_table(levels, title):
    cols = ["wavelet", "variant"]
    for lab in _info_columns(levels):
        cols += [f"{lab} bits", f"{lab} %"]
    cols.append("Total")
    return Table(cols, title=title)


def _info_row(rep, fmt):
    row = [rep.wavelet, rep.variant]
    for b, p in zip(rep.subband_bits, rep.percentages):
        row += [b, _fmt_pct(p) if fmt == "table" else p]
    row.append(rep.total)
    return row


def _load_signal(cfg):
    if cfg.signal is None:
        raise UsageError(f"{cfg.command} needs --signal PATH")
    return ingest_signal(cfg.signal)


def _cmd_mra_info(cfg):
    f = _load_signal(cfg)
    names = cfg.wavelets or list(FILTER_NAMES)
    title = f"MRA information, signal {f.name}, {cfg.levels} level(s) (bits, % of total)"
    t = _info_table(cfg.levels, title)
    variants = VARIANTS if cfg.compare else (cfg.variant,)
    dumps = []
    for name in names:
        c = dwt_periodized(f, name, cfg.levels)
        for v in variants:
            rep = mra_info_report(c, v)
            t.rows.append(_info_row(rep, cfg.fmt))
            if cfg.dump:
                dumps.append((name, v, mra_joint_density(c, v)))
    tables = [t]
    if cfg.compare:
        extra = Table(["wavelet", "literal-marginal total"],
                      title="literal variant summed against its unnormalised marginals")
        for name in names:
            rep = mra_info_report(dwt_periodized(f, name, cfg.levels), "literal")
            extra.rows.append([name, rep.unnormalized_total])
        tables.append(extra)
        key = _reference_key(f)
        if key is not None:
            ref = Table(["wavelet", "row"] + _info_columns(cfg.levels) + ["Total"],
                        title=f"reference values for {key}, {cfg.levels} level(s)")
            for name in names:
                for i, r in enumerate(reference_rows(key, cfg.levels, name), start=1):
                    ref.rows.append([name, i] + list(r.cells) + [r.total])
            tables.append(ref)
    if cfg.dump:
        _write_joint_csv(cfg.dump, dumps)
    return tables


def _write_joint_csv(path, dumps):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["wavelet", "variant", "k", "subband", "mass"])
        for name, v, d in dumps:
            for i, k in enumerate(d.row_labels):
                for j, s in enumerate(d.col_labels):
                    w.writerow([name, v, k, s, repr(float(d.masses[i, j]))])


def _cmd_cwt_mi(cfg):
    f = _load_signal(cfg)
    names = cfg.wavelets or ["cmor"]
    t = Table(["wavelet", "method", "scales", "translations", "coverage", "mutual_info"],
              title=f"CWT mutual information, signal {f.name} (bits)")
    for name in names:
        w = resolve_wavelet(name)
        scales, trans = recommended_cwt_grid(f, w, voices=cfg.voices, span=cfg.span,
                                             step=cfg.step)
        s = cwt(f, w, scales, trans, method=cfg.method, config=cfg.quad)
        d = joint_density_cwt(s)
        mi = mutual_info_cwt(d, cfg.min_coverage)
        t.rows.append([name, cfg.method, len(scales), len(trans), d.coverage, mi])
        if cfg.dump:
            with open(cfg.dump, "w", newline="") as fh:
                wr = csv.writer(fh, lineterminator="\n")
                wr.writerow(["a", "b", "abs_cwt_sq", "mass"])
                for i, a in enumerate(s.scales):
                    for j, b in enumerate(s.translations):
                        wr.writerow([repr(float(a)), repr(float(b)),
                                     repr(float(abs(s.values[i, j]) ** 2)),
                                     repr(float(d.masses[i, j]))])
    return [t]


def _cmd_rank(cfg):
    f = _load_signal(cfg)
    names = cfg.wavelets or list(FILTER_NAMES)
    t = Table(["rank", "wavelet", "total"],
              title=f"filters ranked by MRA information, signal {f.name}, {cfg.levels} level(s)")
    for i, (name, total) in enumerate(rank_wavelets(f, names, cfg.levels, cfg.variant), 1):
        t.rows.append([i, name, total])
    return [t]


_HANDLERS = {
    "catalog": _cmd_catalog,
    "entropy": _cmd_entropy,
    "mra-entropy": _cmd_mra_entropy,
    "distance": _cmd_distance,
    "mra-info": _cmd_mra_info,
    "cwt-mi": _cmd_cwt_mi,
    "rank": _cmd_rank,
}


def run(cfg, out=None):
    """Execute one command; returns the exit status."""
    out = out or sys.stdout
    buf = io.StringIO()
    emit(_HANDLERS[cfg.command](cfg), cfg.fmt, buf)
    out.write(buf.getvalue())
    return 0


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="table", dest="fmt")
    common.add_argument("--quad-points", type=int, default=None,
                        help="initial panel count (overrides WIT_QUAD_POINTS)")
    common.add_argument("--tolerance", type=float, default=None)

    p = _Parser(prog="wavinfo", description="Wavelet entropies, distances and "
                "signal-wavelet mutual information.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("catalog", parents=[common], help="list wavelets and filters")

    e = sub.add_parser("entropy", parents=[common], help="time/frequency/global entropy")
    e.add_argument("--wavelet", action="append", default=[])
    e.add_argument("--domain", choices=("time", "frequency", "global", "all"), default="all")
    e.add_argument("--scale", type=float, default=1.0, help="daughter scale a")
    e.add_argument("--shift", type=float, default=0.0, help="daughter translation b")
    e.add_argument("--upper-bound", action="store_true")
    e.add_argument("--cross", action="store_true", help="add the cross-density terms")

    m = sub.add_parser("mra-entropy", parents=[common], help="entropy of squared filter taps")
    m.add_argument("--wavelet", action="append", default=[])
    m.add_argument("--taps", choices=("g", "h", "both"), default="g")

    d = sub.add_parser("distance", parents=[common], help="KL-type distance between wavelets")
    d.add_argument("--wavelet", action="append", default=[])
    d.add_argument("--against")
    d.add_argument("--variant", choices=DISTANCES, default="literal", dest="distance")
    d.add_argument("--support-fraction", type=float, default=None)

    mi = sub.add_parser("mra-info", parents=[common], help="per-subband MRA information")
    mi.add_argument("--signal")
    mi.add_argument("--wavelet", action="append", default=[])
    mi.add_argument("--levels", type=int, default=1)
    mi.add_argument("--variant", choices=VARIANTS, default="subband_primary")
    mi.add_argument("--compare", action="store_true",
                    help="both variants plus reference values for the bundled signals")
    mi.add_argument("--joint-csv", dest="dump", help="write the joint density as CSV")

    c = sub.add_parser("cwt-mi", parents=[common], help="CWT mutual information")
    c.add_argument("--signal")
    c.add_argument("--wavelet", action="append", default=[])
    c.add_argument("--voices", type=int, default=8)
    c.add_argument("--span", type=float, default=16.0)
    c.add_argument("--step", type=float, default=1.0)
    c.add_argument("--method", choices=("bandlimited", "direct"), default="bandlimited")
    c.add_argument("--min-coverage", type=float, default=0.85)
    c.add_argument("--scalogram-csv", dest="dump", help="write the scalogram as CSV")

    r = sub.add_parser("rank", parents=[common], help="rank filters by MRA information")
    r.add_argument("--signal")
    r.add_argument("--wavelet", action="append", default=[])
    r.add_argument("--levels", type=int, default=1)
    r.add_argument("--variant", choices=VARIANTS, default="subband_primary")
    return p


def parse_config(argv):
    ns = build_parser().parse_args(argv)
    try:
        quad = QuadratureConfig.from_env()
        changes = {}
        if ns.quad_points is not None:
            changes["points"] = ns.quad_points
        if ns.tolerance is not None:
            changes["tolerance"] = ns.tolerance
        if getattr(ns, "support_fraction", None) is not None:
            changes["support_fraction"] = ns.support_fraction
        quad = quad.with_(**changes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cfg = RunConfig(command=ns.command, fmt=ns.fmt, quad=quad)
    for key in ("levels", "variant", "signal", "domain", "scale", "shift", "taps", "distance",
                "compare", "upper_bound", "cross", "min_coverage", "voices", "span", "step",
                "method", "dump"):
        if hasattr(ns, key):
            setattr(cfg, key, getattr(ns, key))
    if ns.command in ("mra-entropy", "mra-info", "rank"):
        cfg.wavelets = _names(getattr(ns, "wavelet", []), FILTER_NAMES, "filter")
    elif ns.command in ("entropy", "distance", "cwt-mi"):
        allowed = ANALYTIC_NAMES + (FILTER_NAMES if ns.command != "cwt-mi" else ())
        cfg.wavelets = _names(getattr(ns, "wavelet", []), allowed, "wavelet")
        if getattr(ns, "against", None):
            cfg.second = _names([ns.against], allowed, "wavelet")[0]
    if cfg.levels < 1:
        raise UsageError(f"--levels must be >= 1, got {cfg.levels}")
    if cfg.voices < 1 or cfg.span <= 0 or cfg.step <= 0:
        raise UsageError("--voices, --span and --step must be positive")
    if cfg.command == "entropy" and cfg.scale == 0:
        raise UsageError("--scale must be nonzero")
    return cfg


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code = run(cfg)
        seen = set()
        for w in caught:
            msg = str(w.message)
            if msg not in seen:
                seen.add(msg)
                print(f"warning: {msg}", file=sys.stderr)
        return code
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except UnknownWaveletError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (WaveletError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

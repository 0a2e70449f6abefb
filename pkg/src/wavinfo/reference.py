"""Reference per-subband information values for the bundled signals.

The values are kept verbatim (strings such as ``"0.0071 (20.2)"`` or
``"<0.0001"``) and are only used for side-by-side display.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

__all__ = ["ReferenceRow", "reference_rows", "reference_tables"]


@dataclass(frozen=True)
class ReferenceRow:
    wavelet: str
    cells: tuple  # Approx, Detail J .. Detail 1; "" where absent
    total: str


@lru_cache(maxsize=None)
def reference_tables():
    """``{(signal, levels): [ReferenceRow, ...]}`` in file order."""
    text = (resources.files("wavinfo") / "data" / "reference_tables.tsv").read_text()
    tables = {}
    key = None
    last = ""
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            sig, lev = line.strip("[]").split()
            key = (sig, int(lev))
            tables[key] = []
            continue
        parts = line.split("\t")
        name = parts[0] or last
        last = name
        width = key[1] + 1
        cells = [p.strip() for p in parts[1:1 + width]]
        cells += [""] * (width - len(cells))
        total = parts[1 + width].strip() if len(parts) > 1 + width else ""
        tables[key].append(ReferenceRow(name, tuple(cells), total))
    return tables


def reference_rows(signal, levels, wavelet):
    """Reference rows for one wavelet (possibly two, possibly none)."""
    return [r for r in reference_tables().get((signal, int(levels)), []) if r.wavelet == wavelet]

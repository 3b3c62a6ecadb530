"""CSV tables, SVG line charts and run manifests.

CSV: header of column names, one row per grid point, ``%.17g`` floats,
LF line endings.  Units are not encoded in the header; they are listed per
column in the manifest.

Manifest (JSON, ``schema = "hartnet.manifest/1"``)::

    {
      "schema":   "hartnet.manifest/1",
      "tool":     {"name": "hartnet", "version": "..."},
      "preset":   "fig4" | null,
      "runspec":  "<config text; parse_config() reproduces the RunSpec>",
      "outputs":  [{"file", "kind", "sha256", "bytes", "rows", "columns", "units"}],
      "timings":  {"<table>": seconds, ..., "total": seconds},
      "created":  "<UTC ISO-8601 timestamp>"
    }
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import os
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .config import RunSpec, serialize_config
from .core import ConfigError
from .sweep import SweepTable

MANIFEST_SCHEMA = "hartnet.manifest/1"


def format_float(x: float) -> str:
    return "%.17g" % x


def _write(path: Path, data: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(data)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}", str(path)) from exc


def csv_text(table: SweepTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_float(v) for v in row])
    return buf.getvalue()


def emit_csv(table: SweepTable, path) -> Path:
    if not table.rows:
        raise ValueError("refusing to write an empty table")
    path = Path(path)
    _write(path, csv_text(table))
    return path


def read_csv(path) -> tuple[list[str], list[tuple[float, ...]]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        return header, [tuple(float(v) for v in row) for row in reader]


# -- SVG ---------------------------------------------------------------------

_W, _H = 640, 420
_L, _R, _T, _B = 70, 20, 20, 50
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    out = []
    v = first
    while v <= hi + 1e-9 * step:
        out.append(round(v, 12))
        v += step
    return out


def _fmt(v: float) -> str:
    return "%.4g" % v


def render_svg(table: SweepTable, x: str, ys: Sequence[str], path,
               group_by: Optional[Sequence[str]] = None, title: str = "") -> Path:
    """Line chart with one polyline per (group, y column).

    ``group_by`` defaults to every axis other than ``x``.
    """
    cols = table.columns
    for name in [x, *ys]:
        if name not in cols:
            raise ConfigError(f"no such column {name!r}", where="svg")
    if group_by is None:
        group_by = [a for a in table.axes if a != x]
    xi = cols.index(x)
    gi = [cols.index(g) for g in group_by]

    series: list[tuple[str, list[tuple[float, float]]]] = []
    for y in ys:
        yi = cols.index(y)
        groups: dict[tuple, list[tuple[float, float]]] = {}
        for row in table.rows:
            groups.setdefault(tuple(row[i] for i in gi), []).append((row[xi], row[yi]))
        for key, pts in groups.items():
            label = y + "".join(f" {g}={_fmt(v)}" for g, v in zip(group_by, key))
            series.append((label, pts))

    finite = [(a, b) for _, pts in series for a, b in pts if math.isfinite(a) and math.isfinite(b)]
    if not finite:
        raise ConfigError("selected columns contain no finite numbers", where="svg")
    x0, x1 = min(p[0] for p in finite), max(p[0] for p in finite)
    y0, y1 = min(p[1] for p in finite), max(p[1] for p in finite)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw, ph = _W - _L - _R, _H - _T - _B
    sx = lambda v: _L + (v - x0) / (x1 - x0) * pw
    sy = lambda v: _T + (y1 - v) / (y1 - y0) * ph

    out = [f'<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_W}" height="{_H}" '
           f'viewBox="0 0 {_W} {_H}">',
           f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
           f'<rect x="{_L}" y="{_T}" width="{pw}" height="{ph}" fill="none" stroke="black"/>']
    for tv in _ticks(x0, x1):
        px = sx(tv)
        out.append(f'<line x1="{px:.2f}" y1="{_T + ph}" x2="{px:.2f}" y2="{_T + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{_T + ph + 18}" font-size="11" text-anchor="middle">{_fmt(tv)}</text>')
    for tv in _ticks(y0, y1):
        py = sy(tv)
        out.append(f'<line x1="{_L - 5}" y1="{py:.2f}" x2="{_L}" y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{_L - 8}" y="{py + 4:.2f}" font-size="11" text-anchor="end">{_fmt(tv)}</text>')
    out.append(f'<text x="{_L + pw / 2:.1f}" y="{_H - 10}" font-size="13" text-anchor="middle">{x}</text>')
    if title:
        out.append(f'<text x="{_L + pw / 2:.1f}" y="14" font-size="13" text-anchor="middle">{title}</text>')
    for i, (label, pts) in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        coords = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in pts
                          if math.isfinite(a) and math.isfinite(b))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}">'
                   f"<title>{label}</title></polyline>")
        out.append(f'<text x="{_L + pw - 5}" y="{_T + 14 + 13 * i}" font-size="11" '
                   f'text-anchor="end" fill="{color}">{label}</text>')
    out.append("</svg>")
    path = Path(path)
    _write(path, "\n".join(out) + "\n")
    return path


# -- manifest ----------------------------------------------------------------

def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def describe_output(path: Path, table: Optional[SweepTable] = None) -> dict:
    entry = {"file": path.name, "kind": path.suffix.lstrip("."),
             "sha256": sha256_file(path), "bytes": os.path.getsize(path)}
    if table is not None:
        entry.update(rows=len(table), columns=list(table.columns),
                     units={c: table.units.get(c, "") for c in table.columns})
    return entry


def emit_manifest(runspec: RunSpec, outputs: Sequence[dict], timings: dict, path) -> Path:
    doc = {
        "schema": MANIFEST_SCHEMA,
        "tool": {"name": "hartnet", "version": __version__},
        "preset": runspec.preset,
        "runspec": serialize_config(runspec),
        "outputs": list(outputs),
        "timings": timings,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    path = Path(path)
    _write(path, json.dumps(doc, indent=2, sort_keys=False) + "\n")
    return path

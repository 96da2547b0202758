"""CSV, SVG and manifest writers."""

from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
from pathlib import Path
from typing import Sequence

import numpy as np


def format_number(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def write_csv(path: Path, header: Sequence[str], columns: Sequence[Sequence[float]]) -> Path:
    """Write equal-length numeric columns with a header row (17 significant digits)."""
    cols = [np.asarray(c, dtype=float) for c in columns]
    if len(cols) != len(header):
        raise ValueError("header and column count differ")
    n = len(cols[0])
    if any(len(c) != n for c in cols):
        raise ValueError("columns differ in length")
    lines = [",".join(header)]
    for i in range(n):
        lines.append(",".join(format_number(c[i]) for c in cols))
    atomic_write_text(path, "\n".join(lines) + "\n")
    return path


def write_rows(path: Path, header: Sequence[str], rows: Sequence[Sequence]) -> Path:
    """Write mixed text/number rows; floats use 17 significant digits."""
    def cell(v):
        if isinstance(v, float):
            return format_number(v)
        return str(v)

    lines = [",".join(header)] + [",".join(cell(v) for v in row) for row in rows]
    atomic_write_text(path, "\n".join(lines) + "\n")
    return path


def atomic_write_text(path: Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def write_json(path: Path, payload: dict):
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def write_svg(
    path: Path,
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    *,
    title: str = "",
    logx: bool = False,
    logy: bool = False,
    width: int = 640,
    height: int = 400,
) -> Path:
    """Polyline plot of ``(label, x, y)`` series. Non-finite points break the line."""
    margin = 50
    tx = (lambda v: np.log10(v)) if logx else (lambda v: v)
    ty = (lambda v: np.log10(np.abs(v))) if logy else (lambda v: v)
    prepared = []
    for label, x, y in series:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            xs, ys = tx(x), ty(y)
        prepared.append((label, xs, ys))
    finite_x = np.concatenate([xs[np.isfinite(xs) & np.isfinite(ys)] for _, xs, ys in prepared] or [np.zeros(1)])
    finite_y = np.concatenate([ys[np.isfinite(xs) & np.isfinite(ys)] for _, xs, ys in prepared] or [np.zeros(1)])
    if finite_x.size == 0:
        finite_x = finite_y = np.zeros(1)
    x0, x1 = float(finite_x.min()), float(finite_x.max())
    y0, y1 = float(finite_y.min()), float(finite_y.max())
    x1 = x1 if x1 > x0 else x0 + 1.0
    y1 = y1 if y1 > y0 else y0 + 1.0

    def px(v):
        return margin + (v - x0) / (x1 - x0) * (width - 2 * margin)

    def py(v):
        return height - margin - (v - y0) / (y1 - y0) * (height - 2 * margin)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="{margin}" y="{margin}" width="{width - 2 * margin}" height="{height - 2 * margin}" fill="none" stroke="black"/>',
        f'<text x="{width / 2}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        f'<text x="{margin}" y="{height - 15}" font-size="10">{"log10 " if logx else ""}x: {x0:.4g} .. {x1:.4g}</text>',
        f'<text x="5" y="{margin - 5}" font-size="10">{"log10|y|" if logy else "y"}: {y0:.4g} .. {y1:.4g}</text>',
    ]
    for i, (label, xs, ys) in enumerate(prepared):
        color = _COLORS[i % len(_COLORS)]
        ok = np.isfinite(xs) & np.isfinite(ys)
        runs, cur = [], []
        for j in range(len(xs)):
            if ok[j]:
                cur.append(f"{px(xs[j]):.2f},{py(ys[j]):.2f}")
            elif cur:
                runs.append(cur)
                cur = []
        if cur:
            runs.append(cur)
        for run in runs:
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1" points="{" ".join(run)}"/>')
        out.append(f'<text x="{width - margin - 150}" y="{margin + 15 + 14 * i}" font-size="11" fill="{color}">{label}</text>')
    out.append("</svg>")
    atomic_write_text(path, "\n".join(out) + "\n")
    return path

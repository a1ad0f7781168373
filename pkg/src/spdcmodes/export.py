"""CSV / JSON / SVG serialization of spectra and sweeps.

Output is byte-deterministic: floats are written with 17 significant
digits (``%.17g``, which round-trips IEEE doubles), rows follow row-major
order over the window, and SVG coordinates are rounded to fixed decimals.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from . import __version__
from .modes import WaistConfig
from .spectra import HGSpectrum, LGSpectrum, Sweep

LG_COLUMNS = ["l_s", "l_i", "re", "im", "prob"]
HG_COLUMNS = ["m_s", "n_s", "m_i", "n_i", "re", "im", "prob"]

# white -> dark blue, linear in probability / max probability
RAMP_LOW = (255, 255, 255)
RAMP_HIGH = (8, 48, 107)
LINE_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def probabilities(spectrum) -> list[tuple[tuple[int, ...], complex, float]]:
    rows = [(idx, complex(a)) for idx, a in spectrum.entries()]
    total = sum(abs(a) ** 2 for _, a in rows)
    return [(idx, a, (abs(a) ** 2 / total) if total > 0 else 0.0) for idx, a in rows]


def spectrum_csv(spectrum) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(LG_COLUMNS if spectrum.basis == "lg" else HG_COLUMNS)
    for idx, a, p in probabilities(spectrum):
        writer.writerow([*idx, fmt(a.real), fmt(a.imag), fmt(p)])
    return buf.getvalue()


def _waists_dict(waists: WaistConfig) -> dict:
    return {"w_p": waists.w_p, "w_s": waists.w_s, "w_i": waists.w_i}


def spectrum_meta(spectrum) -> dict:
    window = {"l_max": spectrum.l_max} if spectrum.basis == "lg" else {
        "m_max": spectrum.m_max, "n_max": spectrum.n_max}
    return {
        "basis": spectrum.basis,
        "theta1": spectrum.theta1,
        "theta2": spectrum.theta2,
        "waists": _waists_dict(spectrum.waists),
        "window": window,
        "normalization": spectrum.normalization,
        "version": __version__,
    }


def spectrum_json(spectrum) -> str:
    entries = [{"index": list(idx), "re": a.real, "im": a.imag, "prob": p}
               for idx, a, p in probabilities(spectrum)]
    return json.dumps({"meta": spectrum_meta(spectrum), "entries": entries}, indent=1) + "\n"


def _write(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def write_csv(spectrum, path) -> None:
    _write(path, spectrum_csv(spectrum))


def write_json(spectrum, path) -> None:
    _write(path, spectrum_json(spectrum))


def _grid_from_rows(basis: str, rows: list[tuple[tuple[int, ...], complex]]):
    idx = np.array([r[0] for r in rows])
    amps = np.array([r[1] for r in rows], dtype=complex)
    if basis == "lg":
        l_max = int(np.max(np.abs(idx)))
        side = 2 * l_max + 1
        if len(rows) != side * side:
            raise ValueError("LG table is not a full square window")
        grid = np.zeros((side, side), dtype=complex)
        grid[idx[:, 0] + l_max, idx[:, 1] + l_max] = amps
        return (l_max,), grid
    m_max = int(max(idx[:, 0].max(), idx[:, 2].max()))
    n_max = int(max(idx[:, 1].max(), idx[:, 3].max()))
    grid = np.zeros((m_max + 1, n_max + 1, m_max + 1, n_max + 1), dtype=complex)
    if len(rows) != grid.size:
        raise ValueError("HG table is not a full window")
    grid[tuple(idx.T)] = amps
    return (m_max, n_max), grid


def _build(basis, window, grid, theta1=math.nan, theta2=math.pi / 8, waists=None,
           normalization="overlap"):
    if basis == "lg":
        return LGSpectrum(window[0], grid, theta1, theta2, waists or WaistConfig.lg(), normalization)
    return HGSpectrum(window[0], window[1], grid, theta1, theta2, waists or WaistConfig.hg(), normalization)


def read_csv(path) -> LGSpectrum | HGSpectrum:
    """Read a spectrum CSV; metadata not stored in CSV is left at defaults."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header == LG_COLUMNS:
            basis, n_idx = "lg", 2
        elif header == HG_COLUMNS:
            basis, n_idx = "hg", 4
        else:
            raise ValueError(f"unrecognized spectrum header {header}")
        rows = [(tuple(int(v) for v in row[:n_idx]), complex(float(row[n_idx]), float(row[n_idx + 1])))
                for row in reader]
    window, grid = _grid_from_rows(basis, rows)
    return _build(basis, window, grid)


def read_json(path) -> LGSpectrum | HGSpectrum:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    meta = doc["meta"]
    rows = [(tuple(e["index"]), complex(e["re"], e["im"])) for e in doc["entries"]]
    window, grid = _grid_from_rows(meta["basis"], rows)
    return _build(meta["basis"], window, grid, meta["theta1"], meta["theta2"],
                  WaistConfig(**meta["waists"]), meta["normalization"])


def pair_label(pair) -> str:
    return "C2_{}_{}".format(*pair)


def sweep_csv(sweep: Sweep) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theta1"] + [pair_label(p) for p in sweep.pairs])
    for t, row in zip(sweep.thetas, sweep.values):
        writer.writerow([fmt(t)] + [fmt(v) for v in row])
    return buf.getvalue()


def read_sweep_csv(path, w_p: float = 1.0) -> Sweep:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        pairs = [tuple(int(v) for v in h[len("C2_"):].split("_")) for h in header[1:]]
        data = np.array([[float(v) for v in row] for row in reader])
    return Sweep(pairs, data[:, 0], data[:, 1:], w_p)


def _color(frac: float) -> str:
    frac = min(max(frac, 0.0), 1.0)
    rgb = [round(lo + (hi - lo) * frac) for lo, hi in zip(RAMP_LOW, RAMP_HIGH)]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _label(idx) -> str:
    return ",".join(str(v) for v in idx)


def spectrum_svg(spectrum, cell: int = 24) -> str:
    """Heatmap of normalized probabilities; rows = signal, columns = idler."""
    probs = {idx: p for idx, _, p in probabilities(spectrum)}
    if spectrum.basis == "lg":
        row_keys = [(l,) for l in spectrum.l_values.tolist()]
        col_keys = row_keys

        def lookup(r, c):
            return probs[(r[0], c[0])]
        title = f"LG spectrum, theta1 = {spectrum.theta1:.6f} rad"
    else:
        row_keys = [(m, n) for m in range(spectrum.m_max + 1) for n in range(spectrum.n_max + 1)]
        col_keys = row_keys

        def lookup(r, c):
            return probs[(r[0], r[1], c[0], c[1])]
        title = f"HG spectrum, theta1 = {spectrum.theta1:.6f} rad"
    pmax = max(probs.values()) or 1.0
    margin = 16 + 8 * max(len(_label(k)) for k in row_keys)
    width = margin + cell * len(col_keys) + 10
    height = margin + cell * len(row_keys) + 30
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="10">',
        f'<text x="{margin}" y="14">{title}</text>',
    ]
    top = margin + 20
    for j, key in enumerate(col_keys):
        x = margin + cell * j + cell / 2
        out.append(f'<text x="{x:.1f}" y="{top - 4}" text-anchor="middle">{_label(key)}</text>')
    for i, rkey in enumerate(row_keys):
        y = top + cell * i
        out.append(f'<text x="{margin - 4}" y="{y + cell / 2 + 3:.1f}" text-anchor="end">{_label(rkey)}</text>')
        for j, ckey in enumerate(col_keys):
            p = lookup(rkey, ckey)
            out.append(f'<rect x="{margin + cell * j}" y="{y}" width="{cell}" height="{cell}" '
                       f'fill="{_color(p / pmax)}"><title>{_label(rkey)} | {_label(ckey)}: {p:.6g}</title></rect>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def sweep_svg(sweep: Sweep, width: int = 480, height: int = 300) -> str:
    """Line plot of each |C|^2 column against theta1 in degrees."""
    left, right, top, bottom = 50, 120, 20, 40
    pw, ph = width - left - right, height - top - bottom
    t_deg = np.degrees(sweep.thetas)
    t0, t1 = float(t_deg.min()), float(t_deg.max())
    vmax = float(sweep.values.max()) or 1.0
    span = (t1 - t0) or 1.0
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="10">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#000"/>',
        f'<text x="{left + pw / 2:.1f}" y="{height - 8}" text-anchor="middle">theta1 (deg)</text>',
        f'<text x="{left - 4}" y="{top + 4}" text-anchor="end">{vmax:.4g}</text>',
        f'<text x="{left - 4}" y="{top + ph}" text-anchor="end">0</text>',
        f'<text x="{left}" y="{top + ph + 14}" text-anchor="middle">{t0:g}</text>',
        f'<text x="{left + pw}" y="{top + ph + 14}" text-anchor="middle">{t1:g}</text>',
    ]
    for k, pair in enumerate(sweep.pairs):
        color = LINE_COLORS[k % len(LINE_COLORS)]
        pts = " ".join(f"{left + pw * (t - t0) / span:.2f},{top + ph * (1 - v / vmax):.2f}"
                       for t, v in zip(t_deg, sweep.values[:, k]))
        out.append(f'<polyline fill="none" stroke="{color}" points="{pts}"/>')
        out.append(f'<text x="{left + pw + 8}" y="{top + 12 + 14 * k}" fill="{color}">'
                   f'({pair[0]},{pair[1]})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

"""Minimal static SVG output: roots-of-unity diagram and sigma_min curves."""
from __future__ import annotations

import math

from .lattice import MembershipResult
from .operators import RootOfUnity


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def roots_figure(d: int, result: MembershipResult | None = None, size: int = 440) -> str:
    """Unit circle with the d-th roots; dashed lattice lines when a witness exists."""
    span = 2.2
    scale = size / (2 * span)

    def px(z: complex) -> tuple[str, str]:
        return _fmt(size / 2 + z.real * scale), _fmt(size / 2 - z.imag * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<clipPath id="frame"><rect x="0" y="0" width="{size}" height="{size}"/></clipPath>',
        '<rect width="100%" height="100%" fill="white"/>',
        '<g clip-path="url(#frame)">',
    ]
    if result is not None and result.embeddable:
        e1 = result.witness.e1.to_complex()
        e2 = result.witness.e2.to_complex()
        e = result.witness.e.to_complex()
        reach = int(math.ceil(4 * span / min(abs(e1), abs(e2)))) + 2
        for step, along in ((e2, e1), (e1, e2)):
            for j in range(-reach, reach + 1):
                a = e + j * step - reach * along
                b = e + j * step + reach * along
                (x1, y1), (x2, y2) = px(a), px(b)
                out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                           'stroke="#555" stroke-dasharray="4 3" stroke-width="0.8"/>')
    cx, cy = px(0j)
    out.append(f'<circle cx="{cx}" cy="{cy}" r="{_fmt(scale)}" fill="none" '
               'stroke="black" stroke-width="1.5"/>')
    out.append(f'<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>')
    w = RootOfUnity(d)
    for k in range(d):
        z = w.power(k)
        x, y = px(z)
        lx, ly = px(z * 1.18)
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="black"/>')
        out.append(f'<text x="{lx}" y="{ly}" font-size="12" text-anchor="middle" '
                   f'dominant-baseline="middle">&#969;{_sup(k)}</text>')
    out.append("</g>")
    verdict = "lattice" if result is not None and result.embeddable else "no lattice"
    out.append(f'<text x="8" y="18" font-size="13">d = {d}: {verdict}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _sup(k: int) -> str:
    digits = "⁰¹²³⁴⁵⁶⁷⁸⁹"
    return "".join(digits[int(c)] for c in str(k))


def sigma_plot(rows: list[dict], width: int = 520, height: int = 340) -> str:
    """sigma_min against M, one polyline per (d, beta)."""
    pad = 48
    series: dict[tuple, list] = {}
    for r in rows:
        series.setdefault((r["d"], r["beta"][0], r["beta"][1]), []).append((r["M"], r["sigma_min"]))
    Ms = [r["M"] for r in rows] or [0, 1]
    ys = [r["sigma_min"] for r in rows] or [0, 1]
    mlo, mhi = min(Ms), max(Ms)
    ylo, yhi = 0.0, max(ys) * 1.1 or 1.0
    if mhi == mlo:
        mhi = mlo + 1

    def px(m, y):
        return (_fmt(pad + (m - mlo) / (mhi - mlo) * (width - 2 * pad)),
                _fmt(height - pad - (y - ylo) / (yhi - ylo) * (height - 2 * pad)))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{width / 2}" y="{height - 12}" font-size="12" text-anchor="middle">M</text>',
        f'<text x="14" y="{height / 2}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 14 {height / 2})">sigma_min</text>',
    ]
    palette = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    for i, (key, pts) in enumerate(sorted(series.items())):
        pts.sort()
        color = palette[i % len(palette)]
        coords = " ".join(",".join(px(m, y)) for m, y in pts)
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for m, y in pts:
            x, yy = px(m, y)
            out.append(f'<circle cx="{x}" cy="{yy}" r="3" fill="{color}"/>')
        out.append(f'<text x="{width - pad + 4}" y="{pad + 14 * i}" font-size="11" fill="{color}">'
                   f'd={key[0]}, beta={key[1]:g}{key[2]:+g}i</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

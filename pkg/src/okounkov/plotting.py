"""SVG figures for colength sequences and planar bodies.

Figures are written with a fixed hash salt and no date stamp, so the same
input gives byte-identical files.  The root ``<svg>`` element carries the
exact data (``data-vertices`` or ``data-sequence``) as ``num/den`` strings.
"""

from __future__ import annotations

import io
import math
from fractions import Fraction
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .exactmath import Polytope  # noqa: E402
from .serialization import exact_string  # noqa: E402

_RC = {
    "svg.hashsalt": "okounkov",
    "svg.fonttype": "path",
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _attach(svg: str, name: str, payload: str) -> str:
    return svg.replace("<svg ", f'<svg {name}="{payload}" ', 1)


def _save(fig, name: str, payload: str) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return _attach(buf.getvalue(), name, payload)


def sequence_svg(levels: Sequence[int], values: Sequence[Fraction], title: str = "",
                 window: tuple[int, int] | None = None, estimate: Fraction | None = None,
                 ylabel: str = "d! l / n^d") -> str:
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 3.6))
        ax.plot(list(levels), [float(v) for v in values], ".-", lw=0.8, ms=3, color="C0")
        if window is not None:
            ax.axvspan(window[0], window[1], color="0.9", zorder=0, label="tail window")
        if estimate is not None:
            ax.axhline(float(estimate), color="C3", lw=0.8, ls="--", label=f"estimate {float(estimate):.6g}")
        ax.set_xlabel("n")
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        if window is not None or estimate is not None:
            ax.legend(frameon=False, loc="best")
        fig.tight_layout()
        payload = ";".join(f"{n}:{exact_string(v)}" for n, v in zip(levels, values))
        return _save(fig, "data-sequence", payload)


def _ordered_polygon(vertices: Sequence[Sequence[Fraction]]) -> list[tuple[Fraction, Fraction]]:
    cx = sum(v[0] for v in vertices) / len(vertices)
    cy = sum(v[1] for v in vertices) / len(vertices)
    return sorted(((v[0], v[1]) for v in vertices),
                  key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))


def body_svg(body: Polytope, title: str = "") -> str:
    """Draw a body in R^1 or R^2; vertices are labelled with exact coordinates."""
    if body.ambient_dim > 2:
        raise ValueError("only bodies in R^1 or R^2 can be drawn")
    verts = list(body.vertices)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.2, 4.2))
        if body.ambient_dim == 1:
            xs = [float(v[0]) for v in verts]
            ax.plot(xs, [0] * len(xs), "-o", color="C0", ms=4)
            ax.set_yticks([])
        elif body.affine_dim == 2:
            poly = _ordered_polygon(verts)
            ax.fill([float(x) for x, _ in poly], [float(y) for _, y in poly], color="C0", alpha=0.25,
                    edgecolor="C0", lw=1.2)
            ax.plot([float(x) for x, _ in poly], [float(y) for _, y in poly], "o", color="C0", ms=4)
        else:
            ax.plot([float(v[0]) for v in verts], [float(v[1]) for v in verts], "-o", color="C0", ms=4)
        for v in verts:
            label = "(" + ", ".join(exact_string(c) if c.denominator != 1 else str(c.numerator) for c in v) + ")"
            ax.annotate(label, (float(v[0]), float(v[1]) if len(v) > 1 else 0.0), fontsize=7,
                        textcoords="offset points", xytext=(4, 4))
        ax.set_aspect("equal" if body.ambient_dim == 2 else "auto")
        ax.margins(0.15)
        if title:
            ax.set_title(title)
        fig.tight_layout()
        payload = ";".join(",".join(exact_string(c) for c in v) for v in verts)
        return _save(fig, "data-vertices", payload)


def write(path, svg: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)

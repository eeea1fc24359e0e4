"""Delimited output and figure rendering for the experiment commands.

CSV is the primary data interface: UTF-8, comma-separated, LF endings,
floats in shortest round-trip decimal.  JSON mirrors each CSV schema as an
array of records.  Figures are standalone SVG files rendered next to the
delimited output; text stays text (no path conversion) and the hash salt
and metadata are pinned so reruns are byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .errors import DomainError
from .gcdstats import FitResult, MomentSeries

matplotlib.rcParams["svg.fonttype"] = "none"
matplotlib.rcParams["svg.hashsalt"] = "gaussgcd"


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return "" if value is None else str(value)


def emit_csv(header: list[str], rows: list[list], path: str | Path | None) -> str:
    """Write rows under a header; returns the text (stdout callers reuse it)."""
    lines = [",".join(header)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8", newline="")
    return text


def emit_json(header: list[str], rows: list[list], path: str | Path | None) -> str:
    """The same table as an array of records keyed by the header."""
    records = [
        {key: value for key, value in zip(header, row) if value is not None}
        for row in rows
    ]
    text = json.dumps(records, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8", newline="")
    return text


def format_polynomial(coefficients: tuple[float, ...]) -> str:
    """Render fit coefficients (highest degree first) like 0.63951x + 1.80167."""
    degree = len(coefficients) - 1
    parts = []
    for i, c in enumerate(coefficients):
        power = degree - i
        mag = f"{abs(c):.5f}"
        var = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
        if not parts:
            parts.append(f"-{mag}{var}" if c < 0 else f"{mag}{var}")
        else:
            parts.append(f"{'-' if c < 0 else '+'} {mag}{var}")
    return " ".join(parts)


def emit_svg(
    series: MomentSeries,
    fit: FitResult,
    path: str | Path,
    conjectured: float | None = None,
) -> None:
    """Scatter of the moment samples with the fitted curve overlaid.

    The caption embeds the fitted polynomial so the coefficients survive in
    the SVG text.  Needs at least two samples to draw a curve.
    """
    if len(series.samples) == 0:
        raise DomainError("cannot plot an empty series")
    if len(series.samples) < 2:
        raise DomainError("cannot draw a fitted curve through a single point")
    xs = np.array([x for x, _ in series.samples], dtype=np.float64)
    ys = np.array([v for _, v in series.samples], dtype=np.float64)
    fitted = np.polyval(fit.coefficients, xs)

    fig, ax = plt.subplots(figsize=(7.0, 4.6))
    ax.plot(xs, ys, ".", markersize=3, color="#1f77b4", label="computed moments")
    ax.plot(xs, fitted, "-", linewidth=1.2, color="#d62728", label="least-squares fit")
    ax.set_xlabel("norm cutoff x")
    ax.set_ylabel(f"mean gcd-norm power, order {series.n}")
    title = f"gcd-norm moment of order {series.n}"
    if conjectured is not None:
        title += f"  (conjectured leading term {conjectured:.5f})"
    ax.set_title(title, fontsize=11)
    ax.legend(loc="upper left", fontsize=9)
    caption = f"best fit: {format_polynomial(fit.coefficients)}"
    fig.text(0.5, 0.015, caption, ha="center", fontsize=9)
    fig.subplots_adjust(bottom=0.17)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)

"""Log-log growth plots with fitted and reference slopes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import exp, log
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .schema import load_sweep_csv

DEFAULT_REFERENCES = (Fraction(6, 5), Fraction(74, 61), Fraction(11, 9))


@dataclass(frozen=True)
class PlotJob:
    csv_path: str
    image_path: str
    references: tuple[Fraction, ...] = DEFAULT_REFERENCES


@dataclass(frozen=True)
class GrowthSummary:
    slope: float
    intercept: float
    rss: float
    points: int
    references: tuple[Fraction, ...] = field(default=())


def fit_loglog(sizes, values) -> GrowthSummary:
    """Ordinary least squares on (log size, log value); natural logarithms."""
    if len(sizes) < 2:
        raise ValueError("need at least two points to fit a slope")
    xs = [log(s) for s in sizes]
    ys = [log(v) for v in values]
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    intercept = my - slope * mx
    rss = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    return GrowthSummary(slope, intercept, rss, n)


def build_growth_figure(points, references):
    """Figure with data scatter, fit line, and rational-slope reference guides.

    Reference guides are drawn at exactly the requested rational slopes,
    anchored at the geometric mean of the data so they cross the cloud.
    Returns (figure, summary); the caller owns the figure.
    """
    sizes = [pt.size_a for pt in points]
    values = [pt.maxgrow for pt in points]
    fit = fit_loglog(sizes, values)

    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=100)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.scatter(sizes, values, color="tab:blue", zorder=3, label="max(|A+A|, |f(A,A)|)")

    lo, hi = min(sizes), max(sizes)
    span = [lo, hi] if lo < hi else [lo * 0.9, lo * 1.1]
    ax.plot(
        span,
        [exp(fit.intercept) * s**fit.slope for s in span],
        color="tab:red",
        label=f"fit slope {fit.slope:.3f}",
    )
    anchor_x = exp(sum(log(s) for s in sizes) / len(sizes))
    anchor_y = exp(sum(log(v) for v in values) / len(values))
    for ref in references:
        expo = float(ref)
        ax.plot(
            span,
            [anchor_y * (s / anchor_x) ** expo for s in span],
            linestyle="--",
            linewidth=0.9,
            color="gray",
            label=f"slope {ref.numerator}/{ref.denominator}",
        )
    ax.set_xlabel("|A|")
    ax.set_ylabel("max growth")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", linewidth=0.3, alpha=0.5)
    fig.tight_layout()
    summary = GrowthSummary(fit.slope, fit.intercept, fit.rss, fit.points, tuple(references))
    return fig, summary


def render_growth_plot(job: PlotJob) -> GrowthSummary:
    """Render the growth figure for a sweep CSV to an image file.

    Deterministic: fixed figure geometry and no timestamps in the image
    metadata, so identical inputs produce identical bytes.
    """
    points = load_sweep_csv(job.csv_path)
    fig, summary = build_growth_figure(points, job.references)
    Path(job.image_path).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(job.image_path, metadata={"Software": "reportviz"})
    plt.close(fig)
    return summary


def parse_reference_list(text: str) -> tuple[Fraction, ...]:
    """Parse --refs values like '6/5,74/61,11/9'."""
    refs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        refs.append(Fraction(part))
    if not refs:
        raise ValueError("empty reference list")
    return tuple(refs)

"""Acceptance: slope agreement with the producer's fit, and the 74/61 guide.

The real-sweep case drives the producer through its command line and reads
its manifest, never importing it: the file formats are the interface.
"""

import json
import math
import subprocess
import sys
from fractions import Fraction

import pytest

from reportviz import PlotJob, render_growth_plot
from reportviz.growth import build_growth_figure
from reportviz.schema import SWEEP_COLUMNS, load_sweep_csv


def _criterion(name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE [{status}] {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def test_s01_synthetic_slope_within_1e6(tmp_path):
    csv = tmp_path / "synthetic.csv"
    rows = [",".join(SWEEP_COLUMNS)]
    for size, maxgrow in ((4, 8), (16, 64), (64, 512), (256, 4096)):  # maxgrow = size^1.5
        rows.append(f"synthetic,101,{size},{maxgrow},{maxgrow},{maxgrow},{maxgrow},1.0,,")
    csv.write_text("\n".join(rows) + "\n")
    summary = render_growth_plot(PlotJob(str(csv), str(tmp_path / "synthetic.png")))
    _criterion(
        "synthetic exact power data: slope within 1e-6 of the exact exponent 3/2",
        abs(summary.slope - 1.5) <= 1e-6,
        f"slope={summary.slope!r}",
    )


def test_s02_real_sweep_slope_matches_manifest(tmp_path):
    csv = tmp_path / "sweep.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "expanderlab", "sweep",
         "--p", "1000003", "--family", "interval:0", "--sizes", "8,16,32,64",
         "--poly", "quad2:1,0,0,0,1,0", "--seed", "5", "--out", str(csv)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, f"producer CLI failed: {proc.stderr}"
    manifest = json.loads((tmp_path / "sweep.csv.manifest.json").read_text())
    summary = render_growth_plot(PlotJob(str(csv), str(tmp_path / "sweep.png")))
    delta = abs(summary.slope - manifest["fit"]["slope"])
    _criterion(
        "real sweep CSV: slope within 0.05 of the manifest's fitted exponent",
        delta <= 0.05,
        f"delta={delta:.2e}",
    )


def test_s03_growth_plot_renders_74_61_reference(tmp_path):
    csv = tmp_path / "s.csv"
    rows = [",".join(SWEEP_COLUMNS)]
    for size, maxgrow in ((4, 8), (16, 64), (64, 512)):
        rows.append(f"synthetic,101,{size},{maxgrow},{maxgrow},{maxgrow},{maxgrow},1.0,,")
    csv.write_text("\n".join(rows) + "\n")
    out = tmp_path / "s.png"
    summary = render_growth_plot(PlotJob(str(csv), str(out)))
    fig, _ = build_growth_figure(load_sweep_csv(csv), summary.references)
    target = float(Fraction(74, 61))
    slopes = []
    for line in fig.axes[0].lines[1:]:
        xs, ys = line.get_xdata(), line.get_ydata()
        slopes.append(
            (math.log(ys[-1]) - math.log(ys[0])) / (math.log(xs[-1]) - math.log(xs[0]))
        )
    import matplotlib.pyplot as plt

    plt.close(fig)
    _criterion(
        "growth plot draws the 74/61 reference guide",
        out.exists()
        and Fraction(74, 61) in summary.references
        and any(abs(s - target) <= 1e-12 for s in slopes),
        f"reference slopes drawn: {[round(s, 6) for s in slopes]}",
    )

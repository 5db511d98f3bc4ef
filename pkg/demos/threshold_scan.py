"""
Logical error rate against p
============================

A reduced sweep (fewer failures per point than a production run) over
three sizes. Writes the points as CSV and an SVG plot next to this file,
then looks for the crossing and fits the decay below it.

Runs in a few seconds on one core.
"""

from pathlib import Path

from philambda import harness

here = Path(__file__).parent
rates = harness.rate_grid(0.02, 0.07, 0.01)
cfg = harness.SweepConfig(sizes=[6, 10, 14], error_rates=rates, stop_failures=300, max_samples=200_000)
points = harness.sweep(cfg)

for pt in points:
    print(f"L={pt.L:2d} p={pt.p:.3f}  P={pt.P:.4f} +- {pt.stderr:.4f}  ({pt.samples} samples)")

(here / "threshold_scan.csv").write_text(harness.points_to_csv(points))
(here / "threshold_scan.svg").write_text(harness.points_to_svg(points, "logical error rate"))

try:
    est = harness.threshold_estimate(points, resamples=200)
    print(f"\ncrossing at p = {est.p_c:.4f}, 95% interval [{est.low:.4f}, {est.high:.4f}]")
except harness.NoCrossing as exc:
    print("\n", exc)

# decay with L well below the crossing
low = harness.sweep(harness.SweepConfig([4, 6, 8, 10], [0.01], stop_failures=300, max_samples=500_000))
fit = harness.fit_alpha(low)
print(f"p = 0.01: P ~ {fit.c:.3g} exp(-{fit.alpha:.3f} L)")

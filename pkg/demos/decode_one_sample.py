"""
Decoding one noisy lattice
==========================

Draws a single error pattern on an L = 7 lattice, prints the syndrome,
then runs the adaptive decoder and the static sweep on copies of it.
"""

import numpy as np

from philambda import ErrorParams, build_geometry, decode, sample_errors, static_decode, vacuum_config
from philambda.noise import apply_record

L = 7
geom = build_geometry(L)
config = vacuum_config(geom)
record = sample_errors(geom, ErrorParams(0.04, 0.04), np.random.default_rng(12))
apply_record(config, record)
print(f"{len(record)} flips on {geom.n_spins} spins:", list(record))


def show(cfg):
    # one row per lattice row, '.' for vacuum, L for Lambda, P for Phi
    marks = {0: ".", 1: "L", 2: "P"}
    for r in range(geom.n_rows):
        print("  ", " ".join(marks[int(cfg.kind(geom.plaquette(r, c)))] for c in range(geom.n_cols)))
    print("   edges", cfg.edge_charges)


print("\nsyndrome")
show(config)

adaptive = config.copy()
report = decode(adaptive)
print(f"\nadaptive: {report.verdict.name}, {len(report.pairings)} pairings, max k {report.max_k}")
for p in report.pairings:
    outcome = "edge" if p.outcome is None else p.outcome.symbol
    print(f"   {geom.region_label(p.source)} -> {geom.region_label(p.target)}  k={p.k}  {outcome}")
show(adaptive)

static = config.copy()
print(f"\nstatic: {static_decode(static).verdict.name}")
show(static)

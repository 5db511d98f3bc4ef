"""
One plaquette of the quantum model
==================================

Four S3 spins around a plaquette. The vacuum states carry trivial charge,
W operators create phi, phibar and Lambda, and the classical Z6 charges
predict the same fusion statistics as the quantum projectors.
"""

from philambda import ds3
from philambda.ds3 import C, E, T, Charge, Color

vac = ds3.vacuum_state(C, T, E, color=Color.GREY)
print("vacuum", {q.value: round(v, 12) + 0.0 for q, v in ds3.measure_charge(vac).items()})

lam = ds3.apply_w("Lambda", 2, vac)
print("W_Lambda", {q.value: round(v, 12) + 0.0 for q, v in ds3.measure_charge(lam).items()})

phi = ds3.apply_w("phi", 1, vac).normalize()
print("W_phi (grey)", {q.value: round(v, 12) + 0.0 for q, v in ds3.measure_charge(phi).items()})

# phi then phibar on the same plaquette: half vacuum, half Lambda
both = ds3.apply_w("phibar", 1, ds3.apply_w("phi", 2, ds3.vacuum_state(C, E, E))).normalize()
print("phi x phibar", {q.value: round(v, 12) + 0.0 for q, v in ds3.measure_charge(both).items()})

# a reflection between the two spins kills the product outright
killed = ds3.apply_w("phi", 1, ds3.apply_w("phi", 2, ds3.vacuum_state(T, E, E)), allow_zero=True)
print("norm with h = t:", killed.norm)

ok, mismatches = ds3.correspondence_check()
print("\nclassical and quantum statistics agree:", ok, f"({len(mismatches)} mismatches)")

"""
Fusion of Phi pairs with Z6 charges
===================================

A Phi anyon is any charge in {1, 2, 4, 5}. Splitting a parent charge into
two Phis picks one of the consistent pairs at random. Fusing across two
such pairs then reproduces the anyonic fusion probabilities, and the
order of two exchanges changes the result.
"""

from philambda import algebra
from philambda.algebra import AnyonKind

# how the vacuum splits into a Phi pair
for pair, w in sorted(algebra.split_pair_distribution(0).items()):
    print(f"0 -> {pair}  with weight {w}")

# two pairs, each created from vacuum (or Lambda, or Phi), fused across
print()
for x in AnyonKind:
    table = algebra.cross_pair_fusion_table(x)
    print(f"pairs fused to {x.symbol}:", {y.symbol: str(w) for y, w in table.items()})

# the F matrix squares to the same table
print()
print(algebra.F_MATRIX)
print((algebra.F_MATRIX ** 2).round(3))

# exchanging the middle pair before or after the outer one
print()
for order in algebra.BRAID_ORDERS:
    dist = algebra.braid_order_experiment(order)
    print(order, {k.symbol: str(v) for k, v in dist.items()})

"""Z6 charge arithmetic and reference data for the Phi-Lambda anyon model.

Plaquette charges live in Z6. The value 0 is the vacuum, 3 is a Lambda and
every element of ``PHI_VALUES = (1, 2, 4, 5)`` is a Phi whose exact residue is
an internal state hidden from the decoder.

All closed-form probability tables are exact :class:`fractions.Fraction`
values so they can be compared with zero tolerance.
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Mapping, Tuple

import numpy as np

N_CHARGES = 6
PHI_VALUES = (1, 2, 4, 5)
LAMBDA_VALUE = 3


class AnyonKind(enum.IntEnum):
    VACUUM = 0
    LAMBDA = 1
    PHI = 2

    @property
    def symbol(self) -> str:
        return {AnyonKind.VACUUM: "1", AnyonKind.LAMBDA: "Λ", AnyonKind.PHI: "Φ"}[self]


# 0 -> vacuum, 3 -> Lambda, otherwise Phi
KIND_OF_CHARGE = (
    AnyonKind.VACUUM, AnyonKind.PHI, AnyonKind.PHI,
    AnyonKind.LAMBDA, AnyonKind.PHI, AnyonKind.PHI,
)

# Representative parent charge used when a kind (not a residue) is split.
KIND_REPRESENTATIVE = {AnyonKind.VACUUM: 0, AnyonKind.LAMBDA: 3}

SplitDistribution = Dict[Tuple[int, int], Fraction]
KindDistribution = Dict[AnyonKind, Fraction]


def charge(value: int) -> int:
    """Canonical nonnegative residue of ``value`` modulo 6."""
    return int(value) % N_CHARGES


def classify(b: int) -> AnyonKind:
    return KIND_OF_CHARGE[charge(b)]


def fuse(b1: int, b2: int) -> int:
    return (b1 + b2) % N_CHARGES


def split_pair_distribution(parent: int) -> SplitDistribution:
    """Exact distribution of the internal states of a Phi pair split out of ``parent``.

    Every ordered pair ``(b1, b2)`` with both members in ``PHI_VALUES`` and
    ``b1 + b2 = parent (mod 6)`` is equally likely. A vacuum or Lambda parent
    has four such pairs, a Phi parent has two.
    """
    parent = charge(parent)
    outcomes = [(b1, (parent - b1) % N_CHARGES) for b1 in PHI_VALUES]
    outcomes = [o for o in outcomes if o[1] in PHI_VALUES]
    weight = Fraction(1, len(outcomes))
    return {o: weight for o in outcomes}


def sample_split(parent: int, rng: np.random.Generator) -> Tuple[int, int]:
    outcomes = list(split_pair_distribution(parent))
    return outcomes[int(rng.integers(len(outcomes)))]


def _parent_pairs(x: AnyonKind) -> Dict[Tuple[int, int], Fraction]:
    """Charges of the two parents created from vacuum with intermediate ``x``.

    The two parents are antiparticles of each other; for a Phi the residue of
    the first parent is itself uniform over ``PHI_VALUES``.
    """
    if x is AnyonKind.PHI:
        return {(i, (-i) % N_CHARGES): Fraction(1, 4) for i in PHI_VALUES}
    rep = KIND_REPRESENTATIVE[x]
    return {(rep, (-rep) % N_CHARGES): Fraction(1)}


def four_phi_state(x: AnyonKind, split=split_pair_distribution) -> Dict[Tuple[int, int, int, int], Fraction]:
    """Joint distribution of four Phi internal states: two pairs, each split from ``x``.

    ``split`` may be replaced to test alternative splitting rules.
    """
    state: Dict[Tuple[int, int, int, int], Fraction] = defaultdict(Fraction)
    for (pa, pb), w in _parent_pairs(x).items():
        for a, wa in split(pa).items():
            for b, wb in split(pb).items():
                state[a + b] += w * wa * wb
    return dict(state)


def _kind_distribution(weights) -> KindDistribution:
    dist = {k: Fraction(0) for k in AnyonKind}
    for b, w in weights:
        dist[classify(b)] += w
    return dist


def cross_pair_fusion_table(x: AnyonKind, split=split_pair_distribution) -> KindDistribution:
    """Exact fusion statistics for one member of each of two pairs split from ``x``.

    Enumerates the four-Phi state and fuses the second anyon of the first
    pair with the first anyon of the second pair.
    """
    state = four_phi_state(AnyonKind(x), split)
    return _kind_distribution((fuse(s[1], s[2]), w) for s, w in state.items())


BRAID_ORDERS = ("i-then-ii", "ii-then-i")
_EXCHANGE = {"i": (0, 1), "ii": (1, 2)}


def braid_order_experiment(order: str, relabel_pairs: bool = False) -> KindDistribution:
    """Fusion statistics at positions B and C after two exchanges applied in ``order``.

    Four Phis sit at positions A-D, the pair at A, B and the pair at C, D each
    split from vacuum. Exchange (i) swaps A and B, (ii) swaps B and C. Braiding
    only permutes the anyons, so the experiment reduces to a permutation
    followed by exact enumeration. ``relabel_pairs`` starts from the pairs in
    the opposite order, which must not matter.
    """
    if order not in BRAID_ORDERS:
        raise ValueError(f"unknown exchange order {order!r}; expected one of {BRAID_ORDERS}")
    positions = [0, 1, 2, 3]
    if relabel_pairs:
        positions = [2, 3, 0, 1]
    for step in order.split("-then-"):
        a, b = _EXCHANGE[step]
        positions[a], positions[b] = positions[b], positions[a]
    state = four_phi_state(AnyonKind.VACUUM)
    return _kind_distribution((fuse(s[positions[1]], s[positions[2]]), w) for s, w in state.items())


# --- abstract model data -------------------------------------------------

def _build_fusion_rules():
    v, lam, phi = AnyonKind.VACUUM, AnyonKind.LAMBDA, AnyonKind.PHI
    base = {
        (v, v): {v}, (v, lam): {lam}, (v, phi): {phi},
        (lam, lam): {v}, (lam, phi): {phi},
        (phi, phi): {v, lam, phi},
    }
    rules = {}
    for (a, b), out in base.items():
        rules[(a, b)] = rules[(b, a)] = frozenset(out)
    return rules


FUSION_RULES: Mapping[Tuple[AnyonKind, AnyonKind], frozenset] = _build_fusion_rules()

# F^{PhiPhiPhi}_Phi in the basis (1, Lambda, Phi), stored as sign * sqrt(square)
F_SIGNS = ((1, 1, -1), (1, 1, 1), (-1, 1, 0))
F_SQUARED = (
    (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)),
    (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2)),
    (Fraction(1, 2), Fraction(1, 2), Fraction(0)),
)
F_MATRIX = np.array(
    [[s * math.sqrt(q) for s, q in zip(srow, qrow)] for srow, qrow in zip(F_SIGNS, F_SQUARED)]
)

# exchange phases R^c_{PhiPhi} for each fusion channel c
R_PHASES = {AnyonKind.VACUUM: 1, AnyonKind.LAMBDA: -1, AnyonKind.PHI: 1}

# closed-form change-of-basis statistics p(x'|x) for four Phis
PROBS_TABLE: Mapping[AnyonKind, KindDistribution] = {
    AnyonKind.VACUUM: {AnyonKind.VACUUM: Fraction(1, 4), AnyonKind.LAMBDA: Fraction(1, 4), AnyonKind.PHI: Fraction(1, 2)},
    AnyonKind.LAMBDA: {AnyonKind.VACUUM: Fraction(1, 4), AnyonKind.LAMBDA: Fraction(1, 4), AnyonKind.PHI: Fraction(1, 2)},
    AnyonKind.PHI: {AnyonKind.VACUUM: Fraction(1, 2), AnyonKind.LAMBDA: Fraction(1, 2), AnyonKind.PHI: Fraction(0)},
}


def f_matrix_probabilities(squared=F_SQUARED) -> Dict[AnyonKind, KindDistribution]:
    """Row-wise |F|^2, i.e. basis-change probabilities implied by the F-matrix."""
    return {AnyonKind(i): {AnyonKind(j): row[j] for j in range(3)} for i, row in enumerate(squared)}

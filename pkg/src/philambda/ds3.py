"""Single-plaquette D(S3) oracle.

A plaquette is four spins, each holding an element of S3, so a state is a
``(6, 6, 6, 6)`` complex array. Group elements are indexed ``3*a + b`` for
``t**a c**b``::

    0 e   1 c   2 c^2   3 t   4 tc   5 tc^2

Gauge transformations act on all four spins: right multiplication by ``x``
on a white plaquette, left multiplication by ``x^-1`` on a grey one. The
charge projectors are the usual character sums over them.

The creation operators are diagonal in the group basis. ``W_phi`` only has
support on the rotations ``{e, c, c^2}``, so it (and hence ``W_Phi``)
annihilates part of the space and results must be renormalized.
"""

from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Tuple

import numpy as np

from .algebra import LAMBDA_VALUE, N_CHARGES

OMEGA = np.exp(2j * np.pi / 3)
ATOL = 1e-12

E, C, C2, T, TC, TC2 = range(6)
ELEMENT_NAMES = ("e", "c", "c2", "t", "tc", "tc2")
T_CLASS = frozenset({T, TC, TC2})


def _mul(x: int, y: int) -> int:
    a, b = divmod(x, 3)
    a2, b2 = divmod(y, 3)
    # c^b t^a2 = t^a2 c^((-1)^a2 b)
    b = (-b if a2 else b) + b2
    return 3 * ((a + a2) % 2) + b % 3


MUL = np.array([[_mul(x, y) for y in range(6)] for x in range(6)], dtype=np.int64)
INV = np.array([int(np.flatnonzero(MUL[x] == E)[0]) for x in range(6)], dtype=np.int64)
MUL.setflags(write=False)
INV.setflags(write=False)


def s3_mul(a: int, b: int) -> int:
    return int(MUL[a, b])


def s3_inv(a: int) -> int:
    return int(INV[a])


def omega_factor(h: int) -> complex:
    """``omega**n`` for ``h = c**n``; zero on the reflections."""
    return 0.0 if h in T_CLASS else OMEGA ** (h % 3)


class Color(str, enum.Enum):
    WHITE = "white"
    GREY = "grey"


class Charge(str, enum.Enum):
    VACUUM = "1"
    LAMBDA = "Lambda"
    PHI = "phi"
    PHIBAR = "phibar"


class Annihilated(ValueError):
    """An operator mapped the state to the zero vector."""


class PlaquetteState:
    """Amplitudes over S3^4 plus the plaquette colour.

    ``normalized`` is False for the output of a non-unitary operator until
    :meth:`normalize` is called.
    """

    def __init__(self, amplitudes, color, normalized=True):
        self.amplitudes = np.asarray(amplitudes, dtype=complex).reshape(6, 6, 6, 6)
        self.color = Color(color)
        self.normalized = normalized

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalize(self) -> "PlaquetteState":
        n = self.norm
        if n < ATOL:
            raise Annihilated("cannot normalize the zero vector")
        return PlaquetteState(self.amplitudes / n, self.color)

    def vdot(self, other: "PlaquetteState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __repr__(self):
        return f"PlaquetteState(color={self.color.value}, norm={self.norm:.6g})"


def vacuum_state(h2: int, h3: int, h4: int, color=Color.GREY) -> PlaquetteState:
    """Equal superposition over ``g`` of the four-spin state with relative factors ``h``.

    Grey plaquettes carry ``|g, g h2, g h3, g h4>``. On a white plaquette the
    gauge group multiplies from the right, so the invariant states are
    ``|g, h2 g, h3 g, h4 g>``.
    """
    return PlaquetteState(_vacuum_amplitudes(h2, h3, h4, Color(color)), color)


@lru_cache(maxsize=None)
def _vacuum_amplitudes(h2, h3, h4, color):
    amps = np.zeros((6, 6, 6, 6), dtype=complex)
    for g in range(6):
        if color is Color.GREY:
            idx = (g, MUL[g, h2], MUL[g, h3], MUL[g, h4])
        else:
            idx = (g, MUL[h2, g], MUL[h3, g], MUL[h4, g])
        amps[idx] += 1 / np.sqrt(6)
    amps.setflags(write=False)
    return amps


def h_triples() -> Iterator[Tuple[int, int, int]]:
    return itertools.product(range(6), repeat=3)


# --- creation operators ------------------------------------------------

W_DIAGONALS = {
    "Lambda": np.array([1, 1, 1, -1, -1, -1], dtype=complex),
    "phi": np.array([1, OMEGA, OMEGA ** 2, 0, 0, 0], dtype=complex),
    "phibar": np.array([1, OMEGA ** 2, OMEGA, 0, 0, 0], dtype=complex),
}
W_DIAGONALS["Phi"] = W_DIAGONALS["phi"] - W_DIAGONALS["phibar"]

# classical creation residue -> oracle operator
CLASSICAL_OPERATOR = {1: "phi", 4: "phi", 2: "phibar", 5: "phibar", LAMBDA_VALUE: "Lambda"}


def apply_w(op: str, spin: int, state: PlaquetteState, allow_zero: bool = False) -> PlaquetteState:
    """Apply ``W_op`` to ``spin`` (1 to 4).

    ``op`` is one of ``Lambda``, ``phi``, ``phibar``, ``Phi``. ``W_Lambda`` is
    unitary. The others are not, so their output is tagged unnormalized,
    except ``Phi`` which is renormalized on the spot. A zero result raises
    :class:`Annihilated` unless ``allow_zero`` is set.
    """
    if op not in W_DIAGONALS:
        raise ValueError(f"unknown operator {op!r}")
    if not 1 <= spin <= 4:
        raise ValueError(f"spin must be 1..4, got {spin}")
    shape = [1, 1, 1, 1]
    shape[spin - 1] = 6
    amps = state.amplitudes * W_DIAGONALS[op].reshape(shape)
    out = PlaquetteState(amps, state.color, normalized=op == "Lambda" and state.normalized)
    if out.norm < ATOL:
        if allow_zero:
            return out
        raise Annihilated(f"W_{op} on spin {spin} annihilated the state")
    if op == "Phi":
        out = out.normalize()
    return out


# --- gauge transformations and projectors ------------------------------

@lru_cache(maxsize=None)
def _gauge_permutation(x: int, color: Color) -> np.ndarray:
    """Flat index map ``perm`` with ``(T_x psi)[perm[i]] = psi[i]``."""
    act = MUL[:, x] if color is Color.WHITE else MUL[INV[x], :]
    grid = np.indices((6, 6, 6, 6)).reshape(4, -1)
    perm = np.ravel_multi_index(tuple(act[grid]), (6, 6, 6, 6))
    perm.setflags(write=False)
    return perm


def gauge_transform(x: int, state: PlaquetteState) -> PlaquetteState:
    out = np.empty(6 ** 4, dtype=complex)
    out[_gauge_permutation(x, state.color)] = state.amplitudes.ravel()
    return PlaquetteState(out, state.color, state.normalized)


PROJECTOR_COEFFICIENTS = {
    Charge.VACUUM: np.array([1, 1, 1, 1, 1, 1]) / 6,
    Charge.LAMBDA: np.array([1, 1, 1, -1, -1, -1]) / 6,
    Charge.PHI: np.array([1, OMEGA, OMEGA ** 2, 0, 0, 0]) / 3,
    Charge.PHIBAR: np.array([1, OMEGA ** 2, OMEGA, 0, 0, 0]) / 3,
}


def project(charge, state: PlaquetteState) -> PlaquetteState:
    coeffs = PROJECTOR_COEFFICIENTS[Charge(charge)]
    amps = np.zeros(6 ** 4, dtype=complex)
    for x, a in enumerate(coeffs):
        if a != 0:
            amps += a * gauge_transform(x, state).amplitudes.ravel()
    return PlaquetteState(amps, state.color, normalized=False)


@lru_cache(maxsize=None)
def projector_matrix(charge, color) -> np.ndarray:
    """Dense 1296 x 1296 matrix of a charge projector (for algebraic checks)."""
    coeffs = PROJECTOR_COEFFICIENTS[Charge(charge)]
    n = 6 ** 4
    mat = np.zeros((n, n), dtype=complex)
    cols = np.arange(n)
    for x, a in enumerate(coeffs):
        if a != 0:
            mat[_gauge_permutation(x, Color(color)), cols] += a
    mat.setflags(write=False)
    return mat


def measure_charge(state: PlaquetteState) -> Dict[Charge, float]:
    """Outcome probabilities of the four charge projectors."""
    if not state.normalized or abs(state.norm - 1) > 1e-9:
        raise ValueError("measure_charge needs a normalized state")
    flat = state.amplitudes.ravel()
    overlaps = np.empty(6, dtype=complex)
    for x in range(6):
        moved = np.empty_like(flat)
        moved[_gauge_permutation(x, state.color)] = flat
        overlaps[x] = np.vdot(flat, moved)
    return {q: float(np.real(PROJECTOR_COEFFICIENTS[q] @ overlaps)) for q in Charge}


# --- classical correspondence ------------------------------------------

def quantum_charge(value: int) -> Charge:
    """Quasiparticle corresponding to a classical Z6 plaquette charge.

    The colour dependence lives in the sign a flip contributes, so the
    dictionary itself is the same on both colours.
    """
    value %= N_CHARGES
    if value == 0:
        return Charge.VACUUM
    if value == LAMBDA_VALUE:
        return Charge.LAMBDA
    return Charge.PHI if value in (1, 4) else Charge.PHIBAR


def classical_distribution(a: int, b: int, color) -> Dict[Charge, Fraction]:
    """Charge distribution after creating ``a`` then ``b`` with the classical model.

    Phi-type residues are drawn uniformly inside their coset ({1, 4} or
    {2, 5}), which is what makes the classical model blind to a Lambda
    fused into a Phi. A white plaquette gains ``+g`` per flip, a grey one
    ``-g``.
    """
    def coset(g):
        return (1, 4) if g in (1, 4) else (2, 5) if g in (2, 5) else (g,)

    sign = 1 if Color(color) is Color.WHITE else -1
    dist = {q: Fraction(0) for q in Charge}
    ca, cb = coset(a), coset(b)
    w = Fraction(1, len(ca) * len(cb))
    for x in ca:
        for y in cb:
            dist[quantum_charge(sign * (x + y))] += w
    return dist


def quantum_distribution(op_a: str, spin_a: int, op_b: str, spin_b: int, color) -> Dict[Charge, float]:
    """Mixed-state outcome distribution of ``W_b W_a`` over the reduced vacuum mixture.

    Each ``|1_h>`` enters with equal prior weight; branches the operators
    annihilate drop out when the mixture is renormalized.
    """
    totals = {q: 0.0 for q in Charge}
    kept = 0.0
    for h in h_triples():
        s = vacuum_state(*h, color=color)
        s = apply_w(op_a, spin_a, s, allow_zero=True)
        s = apply_w(op_b, spin_b, s, allow_zero=True)
        weight = s.norm ** 2
        if weight < ATOL:
            continue
        kept += weight
        for q, pr in measure_charge(s.normalize()).items():
            totals[q] += weight * pr
    return {q: v / kept for q, v in totals.items()}


def correspondence_check(spins=((1, 1), (1, 2), (1, 3), (1, 4)), colors=tuple(Color)):
    """Compare classical and quantum fusion statistics for every ordered creation pair.

    Returns ``(ok, mismatches)`` where ``mismatches`` lists
    ``(a, b, spins, color, classical, quantum)`` for every disagreement
    beyond :data:`ATOL`.
    """
    mismatches = []
    for color in colors:
        for a, b in itertools.product(range(1, 6), repeat=2):
            classical = classical_distribution(a, b, color)
            for sa, sb in spins:
                quantum = quantum_distribution(CLASSICAL_OPERATOR[a], sa, CLASSICAL_OPERATOR[b], sb, color)
                if any(abs(float(classical[q]) - quantum[q]) > ATOL for q in Charge):
                    mismatches.append((a, b, (sa, sb), Color(color), classical, quantum))
    return not mismatches, mismatches

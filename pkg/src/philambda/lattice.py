"""Planar lattice of six-level spins with bicoloured plaquettes.

Layout for linear size ``L``::

    plaquettes      L rows x (L-1) columns, (r, c), white when r + c is even
    vertical spin   (r, c) for r in [0, L), c in [0, L)
                    between plaquettes (r, c-1) and (r, c); column 0 borders
                    the left edge and column L-1 the right edge
    horizontal spin (r, c) for r in [1, L), c in [0, L-1)
                    between plaquettes (r-1, c) and (r, c)

That gives ``L**2 + (L-1)**2`` spins, three spins on top and bottom row
plaquettes, ``L`` spins on each absorbing edge, and a shortest left-to-right
chain of exactly ``L`` spins.

Every spin touches exactly two regions. A flip ``s -> s + g`` adds ``+g`` to
the charge of one of them and ``-g`` to the other, so the total charge of
all regions is conserved modulo 6.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Tuple, Union

import numpy as np

from .algebra import N_CHARGES, AnyonKind, classify

Plaquette = Tuple[int, int]
RegionLike = Union[int, Plaquette, "Side"]


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


# neighbour slots of a plaquette
WEST, EAST, NORTH, SOUTH = range(4)


@dataclass(frozen=True, eq=False)
class LatticeGeometry:
    """Immutable incidence data. Regions are integers: plaquettes first, then the two edges."""

    L: int
    spin_plus: np.ndarray
    spin_minus: np.ndarray
    spin_labels: Tuple[Tuple[str, int, int], ...]
    color: np.ndarray
    neighbors: np.ndarray
    neighbor_spin: np.ndarray

    @property
    def n_rows(self) -> int:
        return self.L

    @property
    def n_cols(self) -> int:
        return self.L - 1

    @property
    def n_plaquettes(self) -> int:
        return self.L * (self.L - 1)

    @property
    def n_spins(self) -> int:
        return len(self.spin_plus)

    @property
    def n_regions(self) -> int:
        return self.n_plaquettes + 2

    @property
    def left(self) -> int:
        return self.n_plaquettes

    @property
    def right(self) -> int:
        return self.n_plaquettes + 1

    def plaquette(self, r: int, c: int) -> int:
        if not (0 <= r < self.n_rows and 0 <= c < self.n_cols):
            raise ValueError(f"plaquette ({r}, {c}) outside a lattice of size L={self.L}")
        return r * self.n_cols + c

    def coords(self, p: int) -> Plaquette:
        if not 0 <= p < self.n_plaquettes:
            raise ValueError(f"region {p} is not a plaquette")
        return divmod(p, self.n_cols)

    def region(self, x: RegionLike) -> int:
        """Normalise a plaquette tuple, a :class:`Side` or a raw index to a region index."""
        if isinstance(x, Side):
            return self.left if x is Side.LEFT else self.right
        if isinstance(x, tuple):
            return self.plaquette(*x)
        x = int(x)
        if not 0 <= x < self.n_regions:
            raise ValueError(f"region index {x} out of range")
        return x

    def is_edge(self, region: int) -> bool:
        return region >= self.n_plaquettes

    def region_label(self, region: int):
        if region == self.left:
            return "L"
        if region == self.right:
            return "R"
        return list(self.coords(region))

    def sign(self, region: int, spin: int) -> int:
        """Sign with which ``spin`` enters the charge of ``region``."""
        if region == self.spin_plus[spin]:
            return 1
        if region == self.spin_minus[spin]:
            return -1
        raise ValueError(f"spin {spin} is not incident to region {region}")

    def spins_of(self, region: int) -> List[int]:
        return [
            j for j in range(self.n_spins)
            if self.spin_plus[j] == region or self.spin_minus[j] == region
        ]

    @cached_property
    def _shared(self) -> Dict[Tuple[int, int], int]:
        shared = {}
        for j, (a, b) in enumerate(zip(self.spin_plus.tolist(), self.spin_minus.tolist())):
            shared[(a, b)] = shared[(b, a)] = j
        return shared

    def shared_spin(self, a: int, b: int) -> int:
        """The single spin shared by two adjacent regions."""
        try:
            return self._shared[(a, b)]
        except KeyError:
            raise ValueError(
                f"regions {self.region_label(a)} and {self.region_label(b)} are not adjacent"
            ) from None


def build_geometry(L: int) -> LatticeGeometry:
    if L < 2:
        raise ValueError(f"lattice size must be at least 2, got {L}")
    n_cols = L - 1
    n_plaq = L * n_cols
    left, right = n_plaq, n_plaq + 1

    def plaq(r, c):
        return r * n_cols + c

    color = np.array([1 if (r + c) % 2 == 0 else -1 for r in range(L) for c in range(n_cols)])
    plus, minus, labels = [], [], []
    neighbors = np.full((n_plaq, 4), -1, dtype=np.int64)
    neighbor_spin = np.full((n_plaq, 4), -1, dtype=np.int64)

    def add_spin(label, a, b, sign_a):
        """Register a spin between regions ``a`` and ``b``; ``a`` gets sign ``sign_a``."""
        j = len(plus)
        labels.append(label)
        if sign_a > 0:
            plus.append(a)
            minus.append(b)
        else:
            plus.append(b)
            minus.append(a)
        return j

    for r in range(L):
        for c in range(L):
            east = plaq(r, c) if c < n_cols else right
            west = plaq(r, c - 1) if c > 0 else left
            # the edge takes the sign opposite to the plaquette it borders
            if c < n_cols:
                j = add_spin(("v", r, c), east, west, color[east])
            else:
                j = add_spin(("v", r, c), west, east, color[west])
            if c < n_cols:
                neighbors[east, WEST], neighbor_spin[east, WEST] = west, j
            if c > 0:
                neighbors[west, EAST], neighbor_spin[west, EAST] = east, j
    for r in range(1, L):
        for c in range(n_cols):
            north, south = plaq(r - 1, c), plaq(r, c)
            j = add_spin(("h", r, c), south, north, color[south])
            neighbors[south, NORTH], neighbor_spin[south, NORTH] = north, j
            neighbors[north, SOUTH], neighbor_spin[north, SOUTH] = south, j

    for arr in (color, neighbors, neighbor_spin):
        arr.setflags(write=False)
    spin_plus = np.array(plus, dtype=np.int64)
    spin_minus = np.array(minus, dtype=np.int64)
    spin_plus.setflags(write=False)
    spin_minus.setflags(write=False)
    return LatticeGeometry(L, spin_plus, spin_minus, tuple(labels), color, neighbors, neighbor_spin)


def manhattan_distance(geom: LatticeGeometry, p1: RegionLike, p2: RegionLike) -> int:
    r1, c1 = geom.coords(geom.region(p1))
    r2, c2 = geom.coords(geom.region(p2))
    return abs(r1 - r2) + abs(c1 - c2)


def distance_to_edge(geom: LatticeGeometry, p: RegionLike, side: Side) -> int:
    """Number of single-plaquette moves needed to push an anyon at ``p`` off ``side``."""
    _, c = geom.coords(geom.region(p))
    return c + 1 if side is Side.LEFT else geom.n_cols - c


@dataclass
class Syndrome:
    """Decoder-visible record: anyon kinds per plaquette, plus the edge charges."""

    anyons: Dict[Plaquette, AnyonKind]
    edge_charges: Tuple[int, int]


class SpinConfig:
    """Spin values plus incrementally maintained region charges."""

    def __init__(self, geom: LatticeGeometry, values=None):
        self.geom = geom
        if values is None:
            values = np.zeros(geom.n_spins, dtype=np.int64)
        self.values = np.asarray(values, dtype=np.int64) % N_CHARGES
        if self.values.shape != (geom.n_spins,):
            raise ValueError("spin value array does not match the geometry")
        self.charges = self.recompute_charges()

    def copy(self) -> "SpinConfig":
        new = SpinConfig.__new__(type(self))
        new.geom = self.geom
        new.values = self.values.copy()
        new.charges = self.charges.copy()
        return new

    def recompute_charges(self) -> np.ndarray:
        """Region charges computed from scratch (the oracle for the cached values)."""
        charges = np.zeros(self.geom.n_regions, dtype=np.int64)
        np.add.at(charges, self.geom.spin_plus, self.values)
        np.subtract.at(charges, self.geom.spin_minus, self.values)
        return charges % N_CHARGES

    def total_charge(self) -> int:
        return int(self.charges.sum()) % N_CHARGES

    @property
    def edge_charges(self) -> Tuple[int, int]:
        return int(self.charges[self.geom.left]), int(self.charges[self.geom.right])

    def kind(self, region: int) -> AnyonKind:
        return classify(self.charges[region])

    def apply_flip(self, spin: int, g: int) -> None:
        g %= N_CHARGES
        self.values[spin] = (self.values[spin] + g) % N_CHARGES
        a, b = self.geom.spin_plus[spin], self.geom.spin_minus[spin]
        self.charges[a] = (self.charges[a] + g) % N_CHARGES
        self.charges[b] = (self.charges[b] - g) % N_CHARGES

    def move_anyon(self, src: RegionLike, dst: RegionLike) -> AnyonKind:
        """Transport the whole content of ``src`` onto the adjacent region ``dst``.

        A single flip on the shared spin empties ``src``; ``dst`` ends up
        holding the fusion of its old content with the moved charge.
        Returns the resulting kind at ``dst``.
        """
        src, dst = self.geom.region(src), self.geom.region(dst)
        b = int(self.charges[src])
        if b == 0:
            raise ValueError(f"nothing to move at {self.geom.region_label(src)}")
        spin = self.geom.shared_spin(src, dst)
        g = (-self.geom.sign(src, spin) * b) % N_CHARGES
        self.apply_flip(spin, g)
        return self.kind(dst)

    def syndrome(self) -> Syndrome:
        geom = self.geom
        anyons = {
            geom.coords(p): classify(b)
            for p, b in enumerate(self.charges[: geom.n_plaquettes])
            if b != 0
        }
        return Syndrome(anyons, self.edge_charges)

    def bulk_is_empty(self) -> bool:
        return not self.charges[: self.geom.n_plaquettes].any()

    def to_dict(self) -> dict:
        geom = self.geom
        return {
            "L": geom.L,
            "spins": [int(v) for v in self.values],
            "charges": {
                "plaquettes": [
                    [*geom.coords(p), int(b)] for p, b in enumerate(self.charges[: geom.n_plaquettes])
                ],
                "b_l": self.edge_charges[0],
                "b_r": self.edge_charges[1],
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def vacuum_config(geom: LatticeGeometry) -> SpinConfig:
    return SpinConfig(geom)


def apply_flip(config: SpinConfig, spin: int, g: int) -> None:
    config.apply_flip(spin, g)


def move_anyon(config: SpinConfig, src: RegionLike, dst: RegionLike) -> AnyonKind:
    return config.move_anyon(src, dst)


def syndrome(config: SpinConfig) -> Syndrome:
    return config.syndrome()

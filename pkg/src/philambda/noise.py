"""Independent per-spin flip noise and reproducible random streams.

Each spin independently receives ``R^3`` with probability ``p_lambda``,
one of ``R^1, R^2, R^4, R^5`` with probability ``p_phi / 4`` each, and is
left alone otherwise. One uniform draw decides the fate of one spin, so a
sample consumes exactly ``n_spins`` doubles from its stream.

Streams are keyed by ``(master_seed, L, p_phi, p_lambda, block)`` where
samples are grouped in fixed blocks of :data:`BLOCK_SIZE`. The rates enter
as integers in units of 1e-12, so a point draws the same errors whichever
grid it belongs to and whichever decoder consumes them. Sample ``i`` uses row
``i % BLOCK_SIZE`` of block ``i // BLOCK_SIZE``, so its flips depend only on
those indices and never on worker count or execution order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

import numpy as np

from .algebra import LAMBDA_VALUE, N_CHARGES, PHI_VALUES
from .lattice import LatticeGeometry, SpinConfig

BLOCK_SIZE = 1024
_PHI_LOOKUP = np.array(PHI_VALUES, dtype=np.int8)


@dataclass(frozen=True)
class ErrorParams:
    p_phi: float
    p_lambda: float

    def __post_init__(self):
        for name in ("p_phi", "p_lambda"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.p_phi + self.p_lambda > 1.0 + 1e-15:
            raise ValueError(f"p_phi + p_lambda must not exceed 1, got {self.p_phi + self.p_lambda}")

    @classmethod
    def symmetric(cls, p: float) -> "ErrorParams":
        """The default regime ``p_phi = p_lambda = p`` (total flip probability ``2p``)."""
        return cls(p, p)

    @property
    def total(self) -> float:
        return self.p_phi + self.p_lambda


@dataclass
class FlipRecord:
    """Ordered list of ``(spin, g)`` flips."""

    flips: List[Tuple[int, int]] = field(default_factory=list)

    def __len__(self):
        return len(self.flips)

    def __iter__(self):
        return iter(self.flips)

    def append(self, spin: int, g: int) -> None:
        self.flips.append((int(spin), int(g) % N_CHARGES))

    def inverse(self) -> "FlipRecord":
        return FlipRecord([(s, (-g) % N_CHARGES) for s, g in reversed(self.flips)])

    def to_json(self) -> str:
        return json.dumps([[s, g] for s, g in self.flips])

    @classmethod
    def from_json(cls, text: str) -> "FlipRecord":
        return cls([(int(s), int(g)) for s, g in json.loads(text)])

    @classmethod
    def from_array(cls, g: np.ndarray) -> "FlipRecord":
        """Record from a dense per-spin flip array (zeros are skipped)."""
        return cls([(int(s), int(g[s])) for s in np.flatnonzero(g)])


def flips_from_uniforms(u: np.ndarray, p_phi: float, p_lambda: float) -> np.ndarray:
    """Map uniforms in [0, 1) to flip values ``g`` (0 meaning no flip).

    Works elementwise on arrays of any shape.
    """
    u = np.asarray(u)
    g = np.zeros(u.shape, dtype=np.int8)
    g[u < p_lambda] = LAMBDA_VALUE
    is_phi = (u >= p_lambda) & (u < p_lambda + p_phi)
    if p_phi > 0 and is_phi.any():
        which = np.minimum(((u[is_phi] - p_lambda) * (4.0 / p_phi)).astype(np.int64), 3)
        g[is_phi] = _PHI_LOOKUP[which]
    return g


def rate_key(params: ErrorParams) -> Tuple[int, int]:
    return round(params.p_phi * 1e12), round(params.p_lambda * 1e12)


def block_stream(master_seed: int, L: int, params: ErrorParams, block: int) -> np.random.Generator:
    seq = np.random.SeedSequence([int(master_seed), int(L), *rate_key(params), int(block)])
    return np.random.Generator(np.random.Philox(seq))


def sample_stream(master_seed: int, L: int, params: ErrorParams, sample_index: int,
                  n_spins: int) -> np.random.Generator:
    """Stream positioned at the start of sample ``sample_index``."""
    block, row = divmod(int(sample_index), BLOCK_SIZE)
    rng = block_stream(master_seed, L, params, block)
    if row:
        rng.random(row * n_spins)
    return rng


def sample_errors(geom: LatticeGeometry, params: ErrorParams, rng: np.random.Generator) -> FlipRecord:
    return FlipRecord.from_array(flips_from_uniforms(rng.random(geom.n_spins), params.p_phi, params.p_lambda))


def sample_block(geom: LatticeGeometry, params: ErrorParams, master_seed: int,
                 block: int, n_rows: int = BLOCK_SIZE) -> np.ndarray:
    """Dense flip arrays for the first ``n_rows`` samples of a block, shape ``(n_rows, n_spins)``."""
    rng = block_stream(master_seed, geom.L, params, block)
    return flips_from_uniforms(rng.random((n_rows, geom.n_spins)), params.p_phi, params.p_lambda)


def apply_record(config: SpinConfig, record: Iterable[Tuple[int, int]]) -> None:
    for spin, g in record:
        config.apply_flip(spin, g)

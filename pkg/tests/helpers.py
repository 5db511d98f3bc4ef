import numpy as np

from philambda.lattice import SpinConfig
from philambda.noise import ErrorParams, apply_record, sample_errors


def with_charges(geom, charges):
    """Configuration whose plaquettes hold ``charges`` ({(r, c): b}).

    Each charge is pulled in from the left edge on its own vacuum copy and
    the spin values are summed, which works because charges are linear in
    the values. The second return value is the resulting edge state.
    """
    total = np.zeros(geom.n_spins, dtype=np.int64)
    for (r, c), b in charges.items():
        config = SpinConfig(geom)
        first = geom.plaquette(r, 0)
        j = geom.shared_spin(geom.left, first)
        config.apply_flip(j, b * geom.sign(first, j))
        cur = first
        for cc in range(1, c + 1):
            nxt = geom.plaquette(r, cc)
            config.move_anyon(cur, nxt)
            cur = nxt
        total += config.values
    config = SpinConfig(geom, total)
    return config, config.edge_charges


def lambda_string(config, p, q):
    """Flip R^3 along a column-then-row path from ``p`` to ``q``; adds 3 at both ends only."""
    geom = config.geom
    (r, c), (r2, c2) = geom.coords(p), geom.coords(q)
    cur = p
    while c != c2:
        c += 1 if c2 > c else -1
        nxt = geom.plaquette(r, c)
        config.apply_flip(geom.shared_spin(cur, nxt), 3)
        cur = nxt
    while r != r2:
        r += 1 if r2 > r else -1
        nxt = geom.plaquette(r, c)
        config.apply_flip(geom.shared_spin(cur, nxt), 3)
        cur = nxt


def noisy_config(geom, p_phi, p_lambda, seed):
    config = SpinConfig(geom)
    apply_record(config, sample_errors(geom, ErrorParams(p_phi, p_lambda), np.random.default_rng(seed)))
    return config

"""numba ports of the decoders for Monte Carlo and exhaustive search.

These work on the region-charge vector alone (plaquettes in reading order,
then the left and right edge), which is all a decoding run changes apart
from the spins it flips. They follow :mod:`philambda.decoder` step by step;
``tests/test_kernels.py`` holds them to identical verdicts and counters.
"""

import numpy as np
from numba import njit

# kind code per residue: 0 vacuum, 1 Lambda, 2 Phi
KIND = np.array([0, 2, 2, 1, 2, 2], dtype=np.int64)

ADAPTIVE, STATIC, STRICT = 0, 1, 2

# slots of the stats vector
INSPECTIONS, PASSES, MAX_K, PAIRINGS = 0, 1, 2, 3


@njit(cache=True)
def _move(ch, src, dst):
    ch[dst] = (ch[dst] + ch[src]) % 6
    ch[src] = 0


@njit(cache=True)
def _find_partner(ch, L, p, k, phase, stats):
    ncols = L - 1
    r = p // ncols
    c = p % ncols
    lo = max(0, r - k)
    hi = min(L, r + k + 1)
    for rr in range(lo, hi):
        dc = k - abs(rr - r)
        cc = c - dc
        if 0 <= cc < ncols:
            stats[INSPECTIONS] += 1
            q = rr * ncols + cc
            if KIND[ch[q]] == phase:
                return q
        if dc > 0:
            cc = c + dc
            if 0 <= cc < ncols:
                stats[INSPECTIONS] += 1
                q = rr * ncols + cc
                if KIND[ch[q]] == phase:
                    return q
    n_plaq = L * ncols
    stats[INSPECTIONS] += 1
    if c + 1 <= k:
        return n_plaq
    stats[INSPECTIONS] += 1
    if ncols - c <= k:
        return n_plaq + 1
    return -1


@njit(cache=True)
def _pair(ch, L, p, q, phase):
    ncols = L - 1
    n_plaq = L * ncols
    r = p // ncols
    c = p % ncols
    if q >= n_plaq:
        step = -1 if q == n_plaq else 1
        cur = p
        cc = c + step
        while 0 <= cc < ncols:
            nxt = r * ncols + cc
            stop = KIND[ch[nxt]] == phase
            _move(ch, cur, nxt)
            cur = nxt
            if stop:
                return
            cc += step
        _move(ch, cur, q)
        return
    src = min(p, q)
    dst = max(p, q)
    r, c = src // ncols, src % ncols
    r2, c2 = dst // ncols, dst % ncols
    cur = src
    step = 1 if c2 > c else -1
    while c != c2:
        c += step
        nxt = r * ncols + c
        stop = nxt == dst or KIND[ch[nxt]] == phase
        _move(ch, cur, nxt)
        cur = nxt
        if stop:
            return
    step = 1 if r2 > r else -1
    while r != r2:
        r += step
        nxt = r * ncols + c
        stop = nxt == dst or KIND[ch[nxt]] == phase
        _move(ch, cur, nxt)
        cur = nxt
        if stop:
            return


@njit(cache=True)
def _remaining(ch, n_plaq, phase):
    for p in range(n_plaq):
        if KIND[ch[p]] == phase:
            return True
    return False


@njit(cache=True)
def _run_phase(ch, L, phase, strict, stats):
    n_plaq = L * (L - 1)
    k = 1
    while _remaining(ch, n_plaq, phase):
        if k > stats[MAX_K]:
            stats[MAX_K] = k
        paired = False
        for p in range(n_plaq):
            if KIND[ch[p]] != phase:
                continue
            q = _find_partner(ch, L, p, k, phase, stats)
            if q < 0:
                continue
            _pair(ch, L, p, q, phase)
            stats[PAIRINGS] += 1
            paired = True
        stats[PASSES] += 1
        if strict or not paired:
            k += 1


@njit(cache=True)
def _static_sweep(ch, L):
    ncols = L - 1
    n_plaq = L * ncols
    for c in range(ncols - 1, -1, -1):
        for r in range(L):
            p = r * ncols + c
            if ch[p] == 0:
                continue
            if c > 0:
                _move(ch, p, p - 1)
            else:
                _move(ch, p, n_plaq)


@njit(cache=True)
def decode_charges(ch, L, variant, stats, reference_left=0):
    """Decode the charge vector ``ch`` in place; returns the verdict code.

    ``reference_left`` is the left-edge charge before any error. Verdict
    codes follow :class:`philambda.decoder.Verdict`.
    """
    n_plaq = L * (L - 1)
    if variant == STATIC:
        _static_sweep(ch, L)
    else:
        _run_phase(ch, L, 2, variant == STRICT, stats)
        _run_phase(ch, L, 1, variant == STRICT, stats)
    return KIND[(ch[n_plaq] - reference_left) % 6]


@njit(cache=True)
def charges_from_flips(g, spin_plus, spin_minus, n_regions):
    ch = np.zeros(n_regions, dtype=np.int64)
    for j in range(g.shape[0]):
        if g[j]:
            ch[spin_plus[j]] += g[j]
            ch[spin_minus[j]] -= g[j]
    for i in range(n_regions):
        ch[i] %= 6
    return ch


@njit(cache=True)
def decode_block(gblock, spin_plus, spin_minus, L, variant):
    """Decode every row of a block of dense flip arrays.

    Returns verdict codes and candidate-inspection counts per row.
    """
    n = gblock.shape[0]
    n_regions = L * (L - 1) + 2
    verdicts = np.empty(n, dtype=np.int8)
    inspections = np.empty(n, dtype=np.int64)
    stats = np.zeros(4, dtype=np.int64)
    for i in range(n):
        ch = charges_from_flips(gblock[i], spin_plus, spin_minus, n_regions)
        stats[:] = 0
        verdicts[i] = decode_charges(ch, L, variant, stats)
        inspections[i] = stats[INSPECTIONS]
    return verdicts, inspections


@njit(cache=True)
def _next_combination(idx, n):
    """Advance ``idx`` to the next increasing combination of range(n); False when exhausted."""
    w = idx.shape[0]
    i = w - 1
    while i >= 0 and idx[i] == n - w + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for j in range(i + 1, w):
        idx[j] = idx[j - 1] + 1
    return True


@njit(cache=True)
def first_failure_of_weight(w, spin_plus, spin_minus, L, variant):
    """Exhaustively search weight-``w`` flip patterns for a logical failure.

    Negating every flip negates every charge without changing any kind, so
    the decoder takes the same decisions and the verdict's success is
    unchanged. The first flip therefore only ranges over {1, 2, 3}.
    Returns ``(found, spins, flips)``.
    """
    n_spins = spin_plus.shape[0]
    n_regions = L * (L - 1) + 2
    idx = np.arange(w)
    g = np.ones(w, dtype=np.int64)
    stats = np.zeros(4, dtype=np.int64)
    ch = np.zeros(n_regions, dtype=np.int64)
    if w > n_spins:
        return False, idx, g
    while True:
        for i in range(w):
            g[i] = 1
        while True:
            ch[:] = 0
            for i in range(w):
                ch[spin_plus[idx[i]]] += g[i]
                ch[spin_minus[idx[i]]] -= g[i]
            for i in range(n_regions):
                ch[i] %= 6
            if decode_charges(ch, L, variant, stats) != 0:
                return True, idx, g
            # odometer over flip values, first digit limited to 1..3
            j = w - 1
            while j >= 0:
                top = 3 if j == 0 else 5
                if g[j] < top:
                    g[j] += 1
                    break
                g[j] = 1
                j -= 1
            if j < 0:
                break
        if not _next_combination(idx, n_spins):
            return False, idx, g

"""Monte Carlo estimation, threshold and decay fits, and output formats.

Sampling is organised in blocks of :data:`~philambda.noise.BLOCK_SIZE`
samples. Block ``b`` of a point always sees the same errors, so a pool of
workers can decode blocks speculatively while the fold over results still
walks the samples strictly in index order and stops at the same sample.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from . import _kernels, algebra, ds3
from .algebra import AnyonKind
from .decoder import VARIANT_CODES, WORK_CONSTANT, Variant, decode
from .lattice import SpinConfig, build_geometry
from .noise import BLOCK_SIZE, ErrorParams, apply_record, sample_block

DEFAULT_FAILURES = 1000
DEFAULT_MAX_SAMPLES = 10 ** 6
CSV_FIELDS = ("L", "p_phi", "p_lambda", "samples", "failures", "lambda_failures",
              "phi_failures", "P", "stderr", "censored", "seed")


class InsufficientData(ValueError):
    """Not enough usable points for a fit or a crossing."""


class NoCrossing(InsufficientData):
    pass


@dataclass
class PointEstimate:
    L: int
    p_phi: float
    p_lambda: float
    samples: int
    failures: int
    lambda_failures: int
    phi_failures: int
    censored: bool
    seed: int
    variant: str = Variant.ADAPTIVE.value
    max_inspections: int = 0

    @property
    def P(self) -> float:
        return self.failures / self.samples if self.samples else 0.0

    @property
    def stderr(self) -> float:
        if not self.samples:
            return 0.0
        P = self.P
        return math.sqrt(P * (1 - P) / self.samples)

    @property
    def p(self) -> float:
        """The common rate when ``p_phi == p_lambda``; otherwise the total over two."""
        return (self.p_phi + self.p_lambda) / 2

    def row(self) -> dict:
        return {
            "L": self.L, "p_phi": self.p_phi, "p_lambda": self.p_lambda,
            "samples": self.samples, "failures": self.failures,
            "lambda_failures": self.lambda_failures, "phi_failures": self.phi_failures,
            "P": self.P, "stderr": self.stderr, "censored": self.censored, "seed": self.seed,
        }


@dataclass
class SweepConfig:
    sizes: Sequence[int]
    error_rates: Sequence[float]
    stop_failures: int = DEFAULT_FAILURES
    max_samples: int = DEFAULT_MAX_SAMPLES
    master_seed: int = 0
    workers: int = 1
    decoder_variant: str = Variant.ADAPTIVE.value
    p_phi: Optional[float] = None  # overrides the grid rate for Phi flips
    p_lambda: Optional[float] = None

    def params(self, p: float) -> ErrorParams:
        return ErrorParams(p if self.p_phi is None else self.p_phi,
                           p if self.p_lambda is None else self.p_lambda)


@dataclass
class FitResult:
    alpha: float
    c: float
    residual: float
    points: List[Tuple[int, float]]


@dataclass
class ThresholdEstimate:
    p_c: float
    low: float
    high: float
    crossings: Dict[Tuple[int, int], float] = field(default_factory=dict)
    resamples: int = 0


# --- sampling ------------------------------------------------------------

@lru_cache(maxsize=None)
def _geometry(L: int):
    return build_geometry(L)


def _block_task(args):
    L, params, seed, block, n_rows, code = args
    geom = _geometry(L)
    g = sample_block(geom, params, seed, block, n_rows)
    return _kernels.decode_block(g, geom.spin_plus, geom.spin_minus, L, code)


def _kind_count(verdicts, kind) -> int:
    return int(np.count_nonzero(verdicts == int(kind)))


def estimate_point(L: int, p_phi: float, p_lambda: float, stop: int = DEFAULT_FAILURES,
                   seed: int = 0, workers: int = 1, max_samples: int = DEFAULT_MAX_SAMPLES,
                   variant=Variant.ADAPTIVE, executor=None) -> PointEstimate:
    """Sample until ``stop`` failures or ``max_samples`` samples, whichever comes first.

    The result is the same for any ``workers``. A point that hits the cap
    is flagged ``censored``.
    """
    if L < 2:
        raise ValueError(f"lattice size must be at least 2, got {L}")
    if stop < 1 or max_samples < 1:
        raise ValueError("stop and max_samples must be positive")
    params = ErrorParams(p_phi, p_lambda)
    variant = Variant(variant)
    est = PointEstimate(L, p_phi, p_lambda, 0, 0, 0, 0, True, seed, variant.value)
    if params.total == 0:
        # no flip is ever drawn, so every sample succeeds
        est.samples = max_samples
        return est

    code = VARIANT_CODES[variant]
    n_blocks = -(-max_samples // BLOCK_SIZE)

    def task(b):
        return (L, params, seed, b, min(BLOCK_SIZE, max_samples - b * BLOCK_SIZE), code)

    own_pool = executor is None and workers > 1
    pool = ProcessPoolExecutor(workers) if own_pool else executor
    try:
        block = 0
        while block < n_blocks:
            batch = [task(b) for b in range(block, min(block + max(workers, 1), n_blocks))]
            results = pool.map(_block_task, batch) if pool is not None else map(_block_task, batch)
            for verdicts, inspections in results:
                failed = np.cumsum(verdicts != 0)
                need = stop - est.failures
                cut = len(verdicts)
                if failed[-1] >= need:
                    cut = int(np.searchsorted(failed, need)) + 1
                    est.censored = False
                v = verdicts[:cut]
                est.samples += cut
                est.failures += int(failed[cut - 1])
                est.lambda_failures += _kind_count(v, AnyonKind.LAMBDA)
                est.phi_failures += _kind_count(v, AnyonKind.PHI)
                est.max_inspections = max(est.max_inspections, int(inspections[:cut].max()))
                if not est.censored:
                    return est
            block += len(batch)
    finally:
        if own_pool:
            pool.shutdown()
    return est


def sweep(config: SweepConfig) -> List[PointEstimate]:
    """One :func:`estimate_point` per (L, p) cell, sizes outermost."""
    pool = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        out = []
        for L in config.sizes:
            for p in config.error_rates:
                params = config.params(p)
                out.append(estimate_point(
                    L, params.p_phi, params.p_lambda, config.stop_failures, config.master_seed,
                    config.workers, config.max_samples, config.decoder_variant, executor=pool,
                ))
        return out
    finally:
        if pool is not None:
            pool.shutdown()


def static_control_experiment(config: SweepConfig) -> List[PointEstimate]:
    """The sweep of ``config`` run with the syndrome-blind static decoder."""
    cfg = SweepConfig(**{**asdict(config), "decoder_variant": Variant.STATIC.value})
    return sweep(cfg)


# --- analysis ------------------------------------------------------------

def _by_size(points: Iterable[PointEstimate]) -> Dict[int, Dict[float, PointEstimate]]:
    table: Dict[int, Dict[float, PointEstimate]] = {}
    for pt in points:
        table.setdefault(pt.L, {})[pt.p] = pt
    return table


def _crossing(ps, P_small, P_large) -> Optional[float]:
    """First p where ln P of the larger size overtakes the smaller one (linear in p)."""
    usable = [(p, a, b) for p, a, b in zip(ps, P_small, P_large) if a > 0 and b > 0]
    for (p0, a0, b0), (p1, a1, b1) in zip(usable, usable[1:]):
        d0 = math.log(b0) - math.log(a0)
        d1 = math.log(b1) - math.log(a1)
        if d0 <= 0 < d1 or (d0 == 0 and d1 == 0):
            return p0 if d0 == d1 else p0 + (p1 - p0) * (-d0) / (d1 - d0)
    return None


def _pairwise_crossings(table, rates_by_pair) -> Dict[Tuple[int, int], Optional[float]]:
    return {
        (L1, L2): _crossing(ps, [table[L1][p] for p in ps], [table[L2][p] for p in ps])
        for (L1, L2), ps in rates_by_pair.items()
    }


def threshold_estimate(points: Sequence[PointEstimate], resamples: int = 1000,
                       seed: int = 0, level: float = 0.95) -> ThresholdEstimate:
    """Mean pairwise crossing of ln P(p) for adjacent sizes, with a parametric bootstrap interval.

    Raises :class:`NoCrossing` when some adjacent pair of curves does not
    cross inside the sampled range.
    """
    grid = _by_size(points)
    sizes = sorted(grid)
    if len(sizes) < 2:
        raise InsufficientData("a threshold needs at least two sizes")
    rates_by_pair = {}
    for L1, L2 in zip(sizes, sizes[1:]):
        ps = sorted(set(grid[L1]) & set(grid[L2]))
        if len(ps) < 3:
            raise InsufficientData(f"sizes {L1} and {L2} share fewer than three rates")
        rates_by_pair[(L1, L2)] = ps

    observed = {L: {p: pt.P for p, pt in row.items()} for L, row in grid.items()}
    crossings = _pairwise_crossings(observed, rates_by_pair)
    missing = [pair for pair, x in crossings.items() if x is None]
    if missing:
        raise NoCrossing(f"no crossing in range for size pairs {missing}")
    p_c = float(np.mean(list(crossings.values())))

    rng = np.random.default_rng(seed)
    boots = []
    for _ in range(resamples):
        sample = {
            L: {p: rng.binomial(pt.samples, pt.P) / pt.samples for p, pt in row.items()}
            for L, row in grid.items()
        }
        xs = _pairwise_crossings(sample, rates_by_pair)
        if all(x is not None for x in xs.values()):
            boots.append(np.mean(list(xs.values())))
    if boots:
        tail = (1 - level) / 2 * 100
        low, high = np.percentile(boots, [tail, 100 - tail])
    else:
        low = high = p_c
    return ThresholdEstimate(p_c, float(min(low, p_c)), float(max(high, p_c)),
                             {k: float(v) for k, v in crossings.items()}, len(boots))


def fit_exponential(L: Sequence[float], P: Sequence[float]) -> FitResult:
    """Least squares of ``ln P = ln c - alpha L`` with equal weights."""
    L = np.asarray(L, dtype=float)
    P = np.asarray(P, dtype=float)
    if len(L) < 3:
        raise InsufficientData(f"need at least three points, got {len(L)}")
    slope, intercept = np.polyfit(L, np.log(P), 1)
    resid = float(np.sum((np.log(P) - (slope * L + intercept)) ** 2))
    return FitResult(float(-slope), float(math.exp(intercept)), resid, list(zip(L.tolist(), P.tolist())))


def fit_alpha(points: Sequence[PointEstimate], min_failures: int = 10) -> FitResult:
    used = sorted((pt for pt in points if pt.failures >= min_failures), key=lambda pt: pt.L)
    if len(used) < 3:
        raise InsufficientData(
            f"{len(used)} of {len(points)} points have at least {min_failures} failures; need three"
        )
    return fit_exponential([pt.L for pt in used], [pt.P for pt in used])


def clopper_pearson_upper(failures: int, samples: int, level: float = 0.95) -> float:
    if failures >= samples:
        return 1.0
    return float(stats.beta.ppf(1 - (1 - level) / 2, failures + 1, samples - failures))


def lstar_accepts(pt: PointEstimate, p: float, min_failures: int = 10) -> bool:
    if pt.censored:
        return clopper_pearson_upper(pt.failures, pt.samples) < p
    return pt.failures >= min_failures and pt.P < p


def find_lstar(p: float, sizes: Sequence[int] = tuple(range(2, 33)), stop: int = DEFAULT_FAILURES,
               seed: int = 0, workers: int = 1, max_samples: int = DEFAULT_MAX_SAMPLES,
               min_failures: int = 10, variant=Variant.ADAPTIVE) -> Optional[int]:
    """Smallest size in ascending ``sizes`` whose logical error rate is clearly below ``p``.

    Returns None if no size up to ``max(sizes)`` qualifies.
    """
    sizes = sorted(sizes)
    if p == 0:
        return sizes[0]
    for L in sizes:
        pt = estimate_point(L, p, p, stop, seed, workers, max_samples, variant)
        if lstar_accepts(pt, p, min_failures):
            return L
    return None


def calibrate_work_constant(L: int = 5, rates=(0.05, 0.1, 0.2, 0.3, 0.4, 0.5),
                            samples: int = 20000, seed: int = 0) -> float:
    """Largest candidate_inspections / L**4 seen on dense random syndromes."""
    geom = _geometry(L)
    worst = 0
    for i, p in enumerate(rates):
        n_blocks = -(-samples // BLOCK_SIZE)
        for b in range(n_blocks):
            g = sample_block(geom, ErrorParams(p, p), seed, b)
            for code in (VARIANT_CODES[Variant.ADAPTIVE], VARIANT_CODES[Variant.STRICT_SINGLE_PASS]):
                _, ins = _kernels.decode_block(g, geom.spin_plus, geom.spin_minus, L, code)
                worst = max(worst, int(ins.max()))
    return worst / L ** 4


def min_failing_weight(L: int, max_weight: int = 4, variant=Variant.ADAPTIVE):
    """Exhaustive search for the lightest flip pattern the decoder gets wrong.

    Returns ``(w, spins, flips)`` or ``(None, None, None)`` if every pattern
    up to ``max_weight`` is corrected.
    """
    geom = _geometry(L)
    code = VARIANT_CODES[Variant(variant)]
    for w in range(1, max_weight + 1):
        found, idx, g = _kernels.first_failure_of_weight(w, geom.spin_plus, geom.spin_minus, L, code)
        if found:
            return w, idx.tolist(), g.tolist()
    return None, None, None


def exact_logical_error_rate(L: int, p_phi: float, p_lambda: float, max_weight: Optional[int] = None,
                             variant=Variant.ADAPTIVE) -> Tuple[float, float]:
    """Weighted enumeration of flip patterns through the reference decoder.

    Returns ``(P, tail)``: the failure probability summed over all patterns
    of weight at most ``max_weight`` and the total probability of the
    heavier patterns left out (zero when nothing is truncated).
    """
    geom = _geometry(L)
    n = geom.n_spins
    params = ErrorParams(p_phi, p_lambda)
    max_weight = n if max_weight is None else min(max_weight, n)
    prob_of = {0: 1 - params.total, algebra.LAMBDA_VALUE: p_lambda}
    prob_of.update({g: p_phi / 4 for g in algebra.PHI_VALUES})
    failure = 0.0
    covered = 0.0
    for w in range(max_weight + 1):
        for spins in itertools.combinations(range(n), w):
            for gs in itertools.product(range(1, 6), repeat=w):
                weight = prob_of[0] ** (n - w)
                for g in gs:
                    weight *= prob_of[g]
                if weight == 0:
                    continue
                covered += weight
                config = SpinConfig(geom)
                apply_record(config, zip(spins, gs))
                if decode(config, variant).verdict:
                    failure += weight
    return failure, max(0.0, 1.0 - covered)



# --- validation ------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    deviation: float = 0.0
    detail: str = ""


def _check(name, deviation, tol=0.0, detail=""):
    return Check(name, bool(deviation <= tol), float(deviation), detail)


def _fraction_gap(a: Dict, b: Dict) -> float:
    return max(abs(Fraction(a[k]) - Fraction(b[k])) for k in b)


def _random_state(rng, color) -> ds3.PlaquetteState:
    v = rng.normal(size=6 ** 4) + 1j * rng.normal(size=6 ** 4)
    return ds3.PlaquetteState(v / np.linalg.norm(v), color)


def validate_all(f_matrix=None, split: Callable = algebra.split_pair_distribution,
                 lattice_trials: int = 200, seed: int = 0) -> List[Check]:
    """Run every exact identity the package relies on.

    ``f_matrix`` and ``split`` replace the built-in constants, which lets
    tests inject faults and watch the matching check fail.
    """
    F = algebra.F_MATRIX if f_matrix is None else np.asarray(f_matrix, dtype=float)
    checks = []

    # algebra
    dev = 0.0
    for parent in range(6):
        dist = split(parent)
        total = sum(dist.values(), Fraction(0))
        bad = [o for o in dist if (o[0] + o[1]) % 6 != parent
               or o[0] not in algebra.PHI_VALUES or o[1] not in algebra.PHI_VALUES]
        dev = max(dev, float(abs(total - 1)), float(len(bad)))
    checks.append(_check("split distributions: weights and coset", dev))
    dev = max(
        float(_fraction_gap(algebra.cross_pair_fusion_table(x, split), algebra.PROBS_TABLE[x]))
        for x in AnyonKind
    )
    checks.append(_check("four-Phi cross-pair fusion table", dev))
    witness = {o: algebra.braid_order_experiment(o) for o in algebra.BRAID_ORDERS}
    dev = max(
        float(_fraction_gap(witness["ii-then-i"], {AnyonKind.VACUUM: 1, AnyonKind.LAMBDA: 0, AnyonKind.PHI: 0})),
        float(_fraction_gap(witness["i-then-ii"], algebra.PROBS_TABLE[AnyonKind.VACUUM])),
    )
    checks.append(_check("braid-order witness", dev))
    checks.append(_check("F symmetric", float(np.abs(F - F.T).max()), 1e-12))
    checks.append(_check("F squares to identity", float(np.abs(F @ F - np.eye(3)).max()), 1e-12))
    probs = np.array([[float(algebra.PROBS_TABLE[AnyonKind(i)][AnyonKind(j)]) for j in range(3)]
                      for i in range(3)])
    checks.append(_check("|F|^2 matches fusion probabilities", float(np.abs(F ** 2 - probs).max()), 1e-12))
    bad = sum(
        algebra.classify(algebra.fuse(a, b)) not in algebra.FUSION_RULES[(algebra.classify(a), algebra.classify(b))]
        for a in range(6) for b in range(6)
    )
    checks.append(_check("Z6 fusion obeys the fusion rules", bad))
    checks.append(_check("R phases", float(algebra.R_PHASES != {AnyonKind.VACUUM: 1, AnyonKind.LAMBDA: -1, AnyonKind.PHI: 1})))

    # group
    M = ds3.MUL
    bad = int(sum(M[M[a, b], c] != M[a, M[b, c]] for a in range(6) for b in range(6) for c in range(6)))
    bad += int(any(sorted(M[a]) != list(range(6)) for a in range(6)))
    bad += int(M[ds3.T, ds3.T] != ds3.E) + int(M[ds3.C, M[ds3.C, ds3.C]] != ds3.E)
    bad += int(M[ds3.T, ds3.C] != M[ds3.C2, ds3.T])
    checks.append(_check("S3 table: axioms, t^2 = c^3 = e, tc = c^2 t", bad))

    # quantum oracle
    dev = 0.0
    for color in ds3.Color:
        for h in ds3.h_triples():
            probs = ds3.measure_charge(ds3.vacuum_state(*h, color=color))
            dev = max(dev, abs(probs[ds3.Charge.VACUUM] - 1),
                      *(abs(probs[q]) for q in ds3.Charge if q is not ds3.Charge.VACUUM))
    checks.append(_check("vacuum states carry charge 1 (216 triples, both colours)", dev, ds3.ATOL))

    rng = np.random.default_rng(seed)
    dev = 0.0
    for color in ds3.Color:
        a, b = _random_state(rng, color), _random_state(rng, color)
        total = np.zeros(6 ** 4, dtype=complex)
        images = {q: ds3.project(q, a) for q in ds3.Charge}
        for q, pa in images.items():
            total += pa.amplitudes.ravel()
            dev = max(dev, np.abs(ds3.project(q, pa).amplitudes - pa.amplitudes).max())
            dev = max(dev, abs(b.vdot(pa) - ds3.project(q, b).vdot(a)))
            for q2, pa2 in images.items():
                if q2 is not q:
                    dev = max(dev, np.abs(ds3.project(q2, pa).amplitudes).max())
        dev = max(dev, np.abs(total - a.amplitudes.ravel()).max())
    checks.append(_check("projectors: idempotent, Hermitian, orthogonal, complete", float(dev), ds3.ATOL))

    W = ds3.W_DIAGONALS
    checks.append(_check("(W_phi)^2 = W_phibar", float(np.abs(W["phi"] ** 2 - W["phibar"]).max()), ds3.ATOL))

    dev_omega = dev_mix = dev_hide = dev_lam = 0.0
    expect_phi = {ds3.Color.WHITE: ds3.Charge.PHI, ds3.Color.GREY: ds3.Charge.PHIBAR}
    for color in ds3.Color:
        for h in ds3.h_triples():
            vac = ds3.vacuum_state(*h, color=color)
            for j in (2, 3, 4):
                hj = h[j - 2]
                lhs = ds3.apply_w("phi", 1, ds3.apply_w("phi", j, vac, allow_zero=True), allow_zero=True)
                rhs = ds3.omega_factor(hj) * ds3.apply_w("phibar", 1, vac).amplitudes
                dev_omega = max(dev_omega, np.abs(lhs.amplitudes - rhs).max())
                mixed = ds3.apply_w("phibar", 1, ds3.apply_w("phi", j, vac, allow_zero=True), allow_zero=True)
                target = ds3.omega_factor(hj) * (vac.amplitudes + ds3.apply_w("Lambda", 1, vac).amplitudes) / 2
                dev_omega = max(dev_omega, np.abs(mixed.amplitudes - target).max())
                if hj not in ds3.T_CLASS:
                    pr = ds3.measure_charge(mixed.normalize())
                    dev_mix = max(dev_mix, abs(pr[ds3.Charge.VACUUM] - 0.5), abs(pr[ds3.Charge.LAMBDA] - 0.5))
                hidden = ds3.apply_w("phi", 1, ds3.apply_w("Lambda", j, vac)).normalize()
                dev_hide = max(dev_hide, abs(ds3.measure_charge(hidden)[expect_phi[color]] - 1))
                twice = ds3.apply_w("Lambda", j, ds3.apply_w("Lambda", 1, vac))
                dev_lam = max(dev_lam, abs(abs(twice.vdot(vac)) - 1))
            lam = ds3.apply_w("Lambda", 1, vac)
            dev_lam = max(dev_lam, abs(ds3.measure_charge(lam)[ds3.Charge.LAMBDA] - 1))
    checks.append(_check("W_phi^1 W_phi^j |1_h> = Omega(h_j) W_phibar^1 |1_h>, phibar x phi form", float(dev_omega), ds3.ATOL))
    checks.append(_check("phi x phibar -> {1: 1/2, Lambda: 1/2}", float(dev_mix), ds3.ATOL))
    checks.append(_check("Lambda hidden inside phi", float(dev_hide), ds3.ATOL))
    checks.append(_check("W_Lambda creates Lambda, squares to +-1", float(dev_lam), ds3.ATOL))

    dev = 0.0
    for color in ds3.Color:
        s = _random_state(rng, color)
        for op in ("phi", "phibar"):
            for i, j in itertools.product(range(1, 5), repeat=2):
                ab = ds3.apply_w("Lambda", i, ds3.apply_w(op, j, s))
                ba = ds3.apply_w(op, j, ds3.apply_w("Lambda", i, s))
                dev = max(dev, np.abs(ab.amplitudes - ba.amplitudes).max())
    checks.append(_check("W_Lambda commutes with W_phi, W_phibar", float(dev), ds3.ATOL))

    ok, mismatches = ds3.correspondence_check()
    checks.append(_check("classical Z6 fusion matches the quantum oracle", len(mismatches)))

    # lattice
    bad = 0
    for trial in range(lattice_trials):
        L = 2 + trial % 6
        geom = _geometry(L)
        config = SpinConfig(geom)
        for _ in range(20):
            config.apply_flip(int(rng.integers(geom.n_spins)), int(rng.integers(6)))
            bad += config.total_charge() != 0
            bad += not np.array_equal(config.charges, config.recompute_charges())
    checks.append(_check("charge conservation and cache agreement", bad))
    return checks


# --- output --------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def points_to_csv(points: Sequence[PointEstimate]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for pt in points:
        row = pt.row()
        writer.writerow([_fmt(row[k]) for k in CSV_FIELDS])
    return buf.getvalue()


def points_from_csv(text: str) -> List[PointEstimate]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append(PointEstimate(
            int(row["L"]), float(row["p_phi"]), float(row["p_lambda"]), int(row["samples"]),
            int(row["failures"]), int(row["lambda_failures"]), int(row["phi_failures"]),
            row["censored"] == "true", int(row["seed"]),
        ))
    return out


def points_to_json(points: Sequence[PointEstimate]) -> str:
    return json.dumps([pt.row() for pt in points], indent=1)


def points_to_svg(points: Sequence[PointEstimate], title: str = "") -> str:
    """Log-scale P against p, one polyline per lattice size."""
    series = {L: sorted((pt.p, pt.P) for pt in row.values() if pt.P > 0)
              for L, row in sorted(_by_size(points).items())}
    return svg_plot(series, "p", "P", title=title, log_y=True)


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def svg_plot(series: Dict, xlabel: str, ylabel: str, title: str = "", log_y: bool = False,
             width: int = 640, height: int = 440) -> str:
    """Bare-bones SVG line chart: axes, ticks at the extremes and one polyline per series."""
    margin = 60
    pts = [(x, y) for data in series.values() for x, y in data]
    if not pts:
        return f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}"></svg>\n'
    ty = (lambda y: math.log10(y)) if log_y else (lambda y: y)
    xs = [x for x, _ in pts]
    ys = [ty(y) for _, y in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    x1 = x1 if x1 > x0 else x0 + 1
    y1 = y1 if y1 > y0 else y0 + 1

    def sx(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def sy(y):
        return height - margin - (ty(y) - y0) / (y1 - y0) * (height - 2 * margin)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="12">']
    out.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    out.append(f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" y2="{height - margin}" stroke="black"/>')
    out.append(f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" stroke="black"/>')
    out.append(f'<text x="{width / 2}" y="{height - 15}" text-anchor="middle">{xlabel}</text>')
    out.append(f'<text x="15" y="{height / 2}" transform="rotate(-90 15 {height / 2})" text-anchor="middle">{ylabel}</text>')
    if title:
        out.append(f'<text x="{width / 2}" y="25" text-anchor="middle">{title}</text>')
    for x in (x0, x1):
        out.append(f'<text x="{sx(x):.1f}" y="{height - margin + 16}" text-anchor="middle">{x:.4g}</text>')
    for y in (y0, y1):
        label = 10 ** y if log_y else y
        out.append(f'<text x="{margin - 6}" y="{height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin):.1f}" text-anchor="end">{label:.3g}</text>')
    for i, (name, data) in enumerate(series.items()):
        colour = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(f"{sx(x):.1f},{sy(y):.1f}" for x, y in data)
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{coords}"/>')
        for x, y in data:
            out.append(f'<circle cx="{sx(x):.1f}" cy="{sy(y):.1f}" r="2.5" fill="{colour}"/>')
        out.append(f'<text x="{width - margin + 5}" y="{margin + 16 * i}" fill="{colour}">L={name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def format_points(points: Sequence[PointEstimate], fmt: str = "csv", title: str = "") -> str:
    if fmt == "csv":
        return points_to_csv(points)
    if fmt == "json":
        return points_to_json(points)
    if fmt == "svg":
        return points_to_svg(points, title)
    raise ValueError(f"unknown format {fmt!r}")


def rate_grid(start: float, stop: float, step: float) -> List[float]:
    """Inclusive arithmetic grid, rounded to suppress float drift."""
    n = int(round((stop - start) / step))
    return [round(start + i * step, 10) for i in range(n + 1)]


def work_bound_holds(points: Sequence[PointEstimate], constant: float = WORK_CONSTANT) -> bool:
    return all(pt.max_inspections <= constant * pt.L ** 4 for pt in points)

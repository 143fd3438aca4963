"""Monte Carlo estimation of C-perfect / Q-perfect / pseudotelepathy
probabilities over (n, m) grids, transition location, and the linear law.

Reproducibility contract: every trial draws its game from a counter-based
RNG keyed by (seed, n, m, trial, dedup), trials are grouped into chunks of
fixed size, and counts merge by integer addition in chunk order.  Output is
therefore bit-identical for any worker count.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateFit, ExhaustedSpace, NoCrossing
from .fastpath import classify_flags
from .games import Dedup, sample_clause_array, sampler_rng

_CHUNK = 256
_WILSON_Z = 1.959963984540054  # 95% normal quantile


@dataclass(frozen=True)
class ProbabilityEstimate:
    n: int
    m: int
    samples: int
    c_count: int
    q_count: int
    pseudo_count: int
    p_c: Fraction
    p_q: Fraction
    p_pseudo: Fraction
    ci_c: float
    ci_q: float
    ci_pseudo: float
    seed: int
    dedup: Dedup

    @property
    def ratio(self):
        return self.m / self.n


@dataclass(frozen=True)
class TransitionEstimate:
    n: int
    m_half_q: float
    m_half_c: float
    ratio_q: float
    ratio_c: float


@dataclass(frozen=True)
class PseudoMax:
    n: int
    m_star: int
    mu: float
    samples: int


def wilson_half_width(count, samples, z=_WILSON_Z):
    """Half-width of the 95% Wilson score interval for count/samples."""
    if samples == 0:
        return 0.0
    p = count / samples
    z2 = z * z
    return (
        z
        * math.sqrt(p * (1.0 - p) / samples + z2 / (4.0 * samples * samples))
        / (1.0 + z2 / samples)
    )


def _count_chunk(args):
    n, m, seed, dedup_value, start, stop = args
    dedup = Dedup(dedup_value)
    c = q = pseudo = 0
    for trial in range(start, stop):
        rng = sampler_rng(seed, n, m, dedup, trial)
        arr = sample_clause_array(n, m, rng, dedup)
        q_flag, c_flag = classify_flags(arr, n)
        if c_flag:
            c += 1
        if q_flag:
            q += 1
        if q_flag and not c_flag:
            pseudo += 1
    return c, q, pseudo


def _capacity_check(n, m, dedup):
    cap = n**3 * (2 if dedup is Dedup.FULL_TUPLE else 1)
    if m > cap:
        raise ExhaustedSpace(
            f"m={m} exceeds capacity {cap} for n={n} dedup={dedup.value}"
        )


def _scan_cells(cells, samples, seed, dedup, threads):
    """Exact counts per (n, m) cell; deterministic for any thread count."""
    for n, m in cells:
        _capacity_check(n, m, dedup)
    tasks = []
    for n, m in cells:
        for start in range(0, samples, _CHUNK):
            tasks.append(
                (n, m, seed, dedup.value, start, min(start + _CHUNK, samples))
            )
    if threads == 0:
        threads = os.cpu_count() or 1
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_count_chunk, tasks, chunksize=4))
    else:
        results = [_count_chunk(t) for t in tasks]
    counts = {cell: [0, 0, 0] for cell in cells}
    for task, (c, q, pseudo) in zip(tasks, results):
        cell = (task[0], task[1])
        counts[cell][0] += c
        counts[cell][1] += q
        counts[cell][2] += pseudo
    return counts


def _estimate_from_counts(n, m, samples, counts, seed, dedup):
    c, q, pseudo = counts
    return ProbabilityEstimate(
        n=n,
        m=m,
        samples=samples,
        c_count=c,
        q_count=q,
        pseudo_count=pseudo,
        p_c=Fraction(c, samples),
        p_q=Fraction(q, samples),
        p_pseudo=Fraction(pseudo, samples),
        ci_c=wilson_half_width(c, samples),
        ci_q=wilson_half_width(q, samples),
        ci_pseudo=wilson_half_width(pseudo, samples),
        seed=seed,
        dedup=dedup,
    )


def estimate_probabilities(n, m, samples, seed, dedup=Dedup.TRIPLE, threads=1):
    """Classify `samples` independently seeded random games and count."""
    counts = _scan_cells([(n, m)], samples, seed, dedup, threads)
    return _estimate_from_counts(n, m, samples, counts[(n, m)], seed, dedup)


def cross_section(n, m_min, m_max, samples, seed, dedup=Dedup.TRIPLE, threads=1):
    """One estimate per integer m in [m_min, m_max], ordered by m."""
    cells = [(n, m) for m in range(m_min, m_max + 1)]
    counts = _scan_cells(cells, samples, seed, dedup, threads)
    return [
        _estimate_from_counts(n, m, samples, counts[(n, m)], seed, dedup)
        for n, m in cells
    ]


def sweep_grid(
    n_list,
    ratio_min,
    ratio_max,
    ratio_step,
    samples,
    seed,
    dedup=Dedup.TRIPLE,
    threads=1,
):
    """One estimate per (n, m = round(ratio*n)) cell, ordered by (n, m).

    Distinct ratios that round to the same m are computed once.
    """
    cells = []
    steps = int(math.floor((ratio_max - ratio_min) / ratio_step + 1e-9)) + 1
    for n in sorted(set(n_list)):
        ms = set()
        for i in range(steps):
            ratio = ratio_min + i * ratio_step
            m = max(1, int(math.floor(ratio * n + 0.5)))
            ms.add(m)
        for m in sorted(ms):
            cells.append((n, m))
    counts = _scan_cells(cells, samples, seed, dedup, threads)
    return [
        _estimate_from_counts(n, m, samples, counts[(n, m)], seed, dedup)
        for n, m in cells
    ]


def _half_crossing(ms, ps):
    """Interpolated m where p crosses 1/2, scanning increasing m."""
    above = [i for i, p in enumerate(ps) if p >= 0.5]
    if not above or above[-1] == len(ms) - 1:
        raise NoCrossing("probability curve does not cross 1/2 in window")
    i = above[-1]
    p1, p2 = ps[i], ps[i + 1]
    m1, m2 = ms[i], ms[i + 1]
    return m1 + (p1 - 0.5) / (p1 - p2) * (m2 - m1)


def find_transition(table):
    """Locate the 1/2-crossings of p_q and p_c in a single-n cross-section."""
    rows = sorted(table, key=lambda e: e.m)
    ns = {e.n for e in rows}
    if len(ns) != 1:
        raise NoCrossing("transition needs a single-n cross-section")
    n = ns.pop()
    ms = [e.m for e in rows]
    m_half_q = _half_crossing(ms, [float(e.p_q) for e in rows])
    m_half_c = _half_crossing(ms, [float(e.p_c) for e in rows])
    return TransitionEstimate(
        n=n,
        m_half_q=m_half_q,
        m_half_c=m_half_c,
        ratio_q=m_half_q / n,
        ratio_c=m_half_c / n,
    )


def max_pseudotelepathy(
    n,
    m_min,
    m_max,
    samples,
    seed,
    dedup=Dedup.TRIPLE,
    threads=1,
    table=None,
):
    """Scan integer m for the pseudotelepathy maximum (ties: smaller m).

    A precomputed cross-section table over the same window may be passed to
    avoid rescanning.
    """
    if table is None:
        table = cross_section(n, m_min, m_max, samples, seed, dedup, threads)
    best = max(sorted(table, key=lambda e: e.m), key=lambda e: e.pseudo_count)
    return PseudoMax(
        n=n, m_star=best.m, mu=float(best.p_pseudo), samples=best.samples
    )


def fit_linear(points):
    """Ordinary least squares m = intercept + slope*n; residual is RMS."""
    if len(points) < 2 or len({x for x, _ in points}) < 2:
        raise DegenerateFit("need at least two distinct n values")
    xs = [float(x) for x, _ in points]
    ys = [float(y) for _, y in points]
    k = len(xs)
    xbar = sum(xs) / k
    ybar = sum(ys) / k
    sxx = sum((x - xbar) ** 2 for x in xs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    residual = math.sqrt(
        sum((y - intercept - slope * x) ** 2 for x, y in zip(xs, ys)) / k
    )
    return slope, intercept, residual


CSV_HEADER = (
    "n,m,ratio,samples,c_count,q_count,pseudo_count,"
    "p_c,p_q,p_pseudo,ci_c,ci_q,ci_pseudo,seed,dedup"
)


def _fmt(x):
    return format(float(x), ".9g")


def write_table(table, stream, manifest=None):
    """Write estimates as CSV; manifest becomes a '#'-prefixed comment."""
    if manifest:
        stream.write(f"# {manifest}\n")
    stream.write(CSV_HEADER + "\n")
    for e in table:
        stream.write(
            ",".join(
                [
                    str(e.n),
                    str(e.m),
                    _fmt(e.ratio),
                    str(e.samples),
                    str(e.c_count),
                    str(e.q_count),
                    str(e.pseudo_count),
                    _fmt(e.p_c),
                    _fmt(e.p_q),
                    _fmt(e.p_pseudo),
                    _fmt(e.ci_c),
                    _fmt(e.ci_q),
                    _fmt(e.ci_pseudo),
                    str(e.seed),
                    e.dedup.value,
                ]
            )
            + "\n"
        )

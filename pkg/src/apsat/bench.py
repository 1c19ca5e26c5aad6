"""Random-ensemble experiments: Hamiltonicity fraction sweeps and size scaling.

Every sample is an independent (generate, solve) pair whose seed is derived
from the master seed and the sample's coordinates, so results are reproducible
and insensitive to how samples are scheduled. Workers > 1 fans samples out to
a process pool; rows are merged by sample index either way.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from .graph import arcs_for_c, gen_random
from .solver import SolveReport, Verdict, ap_sat_solve

_MASK64 = (1 << 64) - 1

CSV_HEADER = ["n", "c", "m", "samples", "ham_fraction", "mean_time_ms", "p95_time_ms"]


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, c_index: int, sample_index: int) -> int:
    """Per-sample seed: master seed XOR a mix of the sample coordinates.

    Appending new parameter values never changes the seeds of existing
    samples.
    """
    mixed = _splitmix64(((c_index & 0xFFFFFFFF) << 32) | (sample_index & 0xFFFFFFFF))
    return (seed ^ mixed) & _MASK64


@dataclass(frozen=True)
class PhaseRow:
    """Aggregated result of one (n, c) cell of an ensemble run."""

    n: int
    c: float
    m: int
    samples: int
    ham_fraction: float
    mean_time_ms: float
    p95_time_ms: float


@dataclass(frozen=True)
class SampleResult:
    n: int
    c: float
    m: int
    sample_index: int
    seed: int
    solve_time_ms: float
    report: SolveReport


def _solve_sample(args: tuple) -> SampleResult:
    n, c, m, idx, seed, r, time_limit = args
    g = gen_random(n, m, seed)
    t0 = time.perf_counter()
    report = ap_sat_solve(g, r=r, time_limit=time_limit)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return SampleResult(n, c, m, idx, seed, elapsed_ms, report)


def run_cell(
    n: int,
    c: float,
    samples: int,
    seed: int,
    c_index: int,
    r: int | None = None,
    time_limit: float | None = None,
    pool: Pool | None = None,
) -> tuple[PhaseRow, list[SampleResult]]:
    """Generate and solve one (n, c) cell of `samples` random instances."""
    m = arcs_for_c(n, c)
    jobs = [
        (n, c, m, idx, derive_seed(seed, c_index, idx), r, time_limit)
        for idx in range(samples)
    ]
    if pool is not None:
        results = pool.map(_solve_sample, jobs)
    else:
        results = [_solve_sample(job) for job in jobs]
    results.sort(key=lambda s: s.sample_index)
    times = [s.solve_time_ms for s in results]
    ham = sum(1 for s in results if s.report.verdict is Verdict.HC_FOUND)
    row = PhaseRow(
        n=n,
        c=c,
        m=m,
        samples=samples,
        ham_fraction=ham / samples,
        mean_time_ms=float(np.mean(times)),
        p95_time_ms=float(np.percentile(times, 95)),
    )
    return row, results


def run_phase(
    n: int,
    c_list: list[float],
    samples: int,
    seed: int,
    r: int | None = None,
    time_limit: float | None = None,
    workers: int = 1,
) -> tuple[list[PhaseRow], list[SampleResult]]:
    """Hamiltonicity sweep over the degree parameters in c_list at fixed n."""
    if n < 3:
        raise ValueError("phase sweep needs n >= 3")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rows: list[PhaseRow] = []
    details: list[SampleResult] = []
    pool = Pool(workers) if workers > 1 else None
    try:
        for c_index, c in enumerate(c_list):
            row, results = run_cell(n, c, samples, seed, c_index, r, time_limit, pool)
            rows.append(row)
            details.extend(results)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return rows, details


def run_scaling(
    sizes: list[int],
    c: float,
    samples: int,
    seed: int,
    r: int | None = None,
    time_limit: float | None = None,
    workers: int = 1,
) -> tuple[list[PhaseRow], list[SampleResult]]:
    """Mean solve time per size at a fixed degree parameter."""
    if sorted(sizes) != list(sizes):
        raise ValueError("sizes must be ascending")
    rows: list[PhaseRow] = []
    details: list[SampleResult] = []
    pool = Pool(workers) if workers > 1 else None
    try:
        for size_index, n in enumerate(sizes):
            row, results = run_cell(n, c, samples, seed, size_index, r, time_limit, pool)
            rows.append(row)
            details.extend(results)
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return rows, details


def rows_to_csv(rows: list[PhaseRow]) -> str:
    """Deterministic CSV rendering (timing columns vary run to run)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(
            [
                row.n,
                format(row.c, "g"),
                row.m,
                row.samples,
                f"{row.ham_fraction:.4f}",
                f"{row.mean_time_ms:.3f}",
                f"{row.p95_time_ms:.3f}",
            ]
        )
    return buf.getvalue()


def loglog_slope(sizes: list[int], mean_times_ms: list[float]) -> float:
    """Least-squares slope of log(time) against log(size)."""
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.asarray(mean_times_ms, dtype=float))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)

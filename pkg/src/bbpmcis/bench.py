"""Runtime benchmarks on generated outerplanar graph pairs.

Configurations are interleaved within each repetition, so slow drift in
machine load spreads evenly over all of them instead of biasing one size.
"""

from __future__ import annotations

import csv
import gc
import statistics
import time
from dataclasses import dataclass, field

from .bbp import bbp_mcis
from .generator import gen_outerplanar
from .weights import UNIFORM, WeightFn

__all__ = ["BenchConfig", "BenchRow", "run_bench", "write_csv", "adjacent_ratios"]


@dataclass(frozen=True)
class BenchConfig:
    n: int
    ratio: float
    block_size: float
    labels: int = 1


@dataclass
class BenchRow:
    config: BenchConfig
    times_ms: list = field(default_factory=list)

    @property
    def mean_ms(self) -> float:
        return statistics.fmean(self.times_ms)

    @property
    def sd_ms(self) -> float:
        return statistics.stdev(self.times_ms) if len(self.times_ms) > 1 else 0.0


def _pair_seed(seed: int, index: int, rep: int, side: int) -> int:
    return ((seed * 1_000_003 + index) * 100_003 + rep) * 2 + side


def run_bench(configs, reps: int = 100, seed: int = 0, w: WeightFn = UNIFORM,
              warmup: int = 1, progress=None) -> list:
    """Mean and spread of ``bbp_mcis`` time per configuration.

    Each repetition draws a fresh pair per configuration; only the algorithm
    call is timed. ``warmup`` untimed calls per configuration come first.
    """
    configs = list(configs)
    rows = [BenchRow(c) for c in configs]

    def pair(i, c, rep):
        g = gen_outerplanar(c.n, c.ratio, c.block_size, c.labels, _pair_seed(seed, i, rep, 0))
        h = gen_outerplanar(c.n, c.ratio, c.block_size, c.labels, _pair_seed(seed, i, rep, 1))
        return g, h

    gc.collect()
    for i, c in enumerate(configs):
        for k in range(warmup):
            bbp_mcis(*pair(i, c, -1 - k), w)
    for rep in range(reps):
        for i, c in enumerate(configs):
            g, h = pair(i, c, rep)
            t0 = time.perf_counter()
            bbp_mcis(g, h, w)
            rows[i].times_ms.append((time.perf_counter() - t0) * 1000.0)
        if progress is not None:
            progress(rep + 1, reps)
    return rows


def adjacent_ratios(rows) -> list:
    """Ratios of consecutive mean times."""
    return [b.mean_ms / a.mean_ms for a, b in zip(rows, rows[1:])]


def write_csv(rows, path_or_file) -> None:
    """Columns: size, ratio, block_size, labels, reps, mean_ms, sd_ms, median_ms, max_ms."""
    own = isinstance(path_or_file, str)
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        out = csv.writer(fh)
        out.writerow(["size", "ratio", "block_size", "labels", "reps",
                      "mean_ms", "sd_ms", "median_ms", "max_ms"])
        for r in rows:
            c = r.config
            out.writerow([c.n, c.ratio, c.block_size, c.labels, len(r.times_ms),
                          f"{r.mean_ms:.4f}", f"{r.sd_ms:.4f}",
                          f"{statistics.median(r.times_ms):.4f}", f"{max(r.times_ms):.4f}"])
    finally:
        if own:
            fh.close()

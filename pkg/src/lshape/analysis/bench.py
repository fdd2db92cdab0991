"""Empirical point budgets: the fewest points on which an embedder succeeds."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..binary import embed_binary
from ..drawing import validate
from ..embedding import InsufficientPoints
from ..generators import gen_points, gen_tree
from ..paths import embed_monotone_path
from ..ternary import embed_ternary

BENCH_FAMILIES = ("perfect-binary", "binary", "perfect-ternary", "ternary", "path")


def _trial(family: str, n: int, m: int, seed: int, generator: str) -> bool:
    pts = gen_points(generator, m, seed)
    try:
        if family == "path":
            d = embed_monotone_path(n, pts)
            return d.is_straight_through() and d.is_x_monotone() and validate(d.drawing).ok
        degree = 3 if "binary" in family else 4
        shape = "perfect" if family.startswith("perfect") else "random"
        t = gen_tree(shape, n, degree, seed)
        embed = embed_binary if degree == 3 else embed_ternary
        return validate(embed(t, pts)).ok
    except InsufficientPoints:
        return False


@dataclass
class BenchRow:
    n: int
    min_points: int
    success_rate: float


@dataclass
class BenchResult:
    family: str
    generators: tuple[str, ...]
    rows: list[BenchRow]
    exponent: float | None

    def write_csv(self, path_or_file) -> None:
        def dump(fh):
            w = csv.writer(fh)
            w.writerow(["n", "min_points", "success_rate"])
            for r in self.rows:
                w.writerow([r.n, r.min_points, f"{r.success_rate:.4f}"])

        if hasattr(path_or_file, "write"):
            dump(path_or_file)
        else:
            with open(path_or_file, "w", newline="") as fh:
                dump(fh)


def _min_points(rate: Callable[[int], float], n: int, threshold: float) -> int:
    lo, hi = n - 1, n  # rate(lo) is below threshold: fewer points than nodes never work
    while rate(hi) < threshold:
        lo, hi = hi, 2 * hi
        if hi > 10**7:
            raise RuntimeError(f"no success up to {hi} points for n={n}")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if rate(mid) >= threshold:
            hi = mid
        else:
            lo = mid
    return hi


def fit_exponent(ns: Sequence[int], ms: Sequence[int]) -> float | None:
    """Least-squares slope of log m against log n."""
    if len(ns) < 2:
        return None
    return float(np.polyfit(np.log(ns), np.log(ms), 1)[0])


def bench_point_budget(
    family: str,
    sizes: Sequence[int],
    seeds: int = 20,
    generator: str | Sequence[str] = "uniform",
    threshold: float = 0.95,
) -> BenchResult:
    """For each n, the fewest points m on which the embedder succeeds for at
    least ``threshold`` of the seeds, worst case over the given generators."""
    if family not in BENCH_FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    gens = (generator,) if isinstance(generator, str) else tuple(generator)
    rows = []
    for n in sizes:
        worst = None
        for gen in gens:
            cache: dict[int, float] = {}

            def rate(m: int) -> float:
                if m not in cache:
                    ok = sum(_trial(family, n, m, s, gen) for s in range(seeds))
                    cache[m] = ok / seeds
                return cache[m]

            m = _min_points(rate, n, threshold)
            if worst is None or m > worst.min_points:
                worst = BenchRow(n, m, rate(m))
        rows.append(worst)
    exp = fit_exponent([r.n for r in rows], [r.min_points for r in rows])
    return BenchResult(family, gens, rows, exp)


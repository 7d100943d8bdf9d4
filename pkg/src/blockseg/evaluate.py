"""Monte-Carlo recovery experiments over grids of sample size and penalty constant."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .scoring import IntervalScorer, Penalty, PenaltyConfig
from .simulate import SimulationDesign, simulate
from .solvers import SOLVERS

TSV_COLUMNS = ["n", "c", "replicate", "solver", "cuts", "exact_recovery", "hausdorff", "ms"]


def hausdorff(a, b, m: int) -> float:
    """Hausdorff distance between two cut sets; ``m`` when exactly one is empty."""
    a, b = list(a), list(b)
    if not a and not b:
        return 0
    if not a or not b:
        return m
    d_ab = max(min(abs(x - y) for y in b) for x in a)
    d_ba = max(min(abs(x - y) for x in a) for y in b)
    return max(d_ab, d_ba)


@dataclass
class Trial:
    n: int
    c: float
    replicate: int
    solver: str
    cuts: list[int]
    exact_recovery: bool
    hausdorff: float
    ms: float | None

    def tsv_fields(self) -> list[str]:
        return [
            str(self.n),
            repr(self.c),
            str(self.replicate),
            self.solver,
            ",".join(map(str, self.cuts)),
            str(int(self.exact_recovery)),
            str(self.hausdorff),
            "NA" if self.ms is None else f"{self.ms:.3f}",
        ]


def _run_cell(args) -> list[Trial]:
    design, n, replicate, seed, c_grid, family, solver, timing = args
    alignment, truth = simulate(design.with_sample(n, seed + replicate))
    trials = []
    for c in c_grid:
        scorer = IntervalScorer(alignment, PenaltyConfig(family, c))
        t0 = time.perf_counter()
        seg = SOLVERS[solver](scorer)
        ms = (time.perf_counter() - t0) * 1e3 if timing else None
        trials.append(Trial(n, c, replicate, solver, seg.cuts, seg.cuts == truth,
                            hausdorff(seg.cuts, truth, alignment.cols), ms))
    return trials


def run_grid(design: SimulationDesign, n_grid, c_grid, replicates: int,
             solver: str = "dp", seed: int = 0,
             family: Penalty | str = Penalty.THEORETICAL,
             jobs: int = 1, timing: bool = True) -> list[Trial]:
    """One trial per (n, c, replicate), ordered by n, then c, then replicate.

    Replicate ``r`` at sample size ``n`` simulates with seed ``seed + r``; the
    same sample is scored under every ``c``.
    """
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}")
    n_grid = [int(n) for n in n_grid]
    c_grid = [float(c) for c in c_grid]
    tasks = [(design, n, r, seed, c_grid, Penalty(family), solver, timing)
             for n in n_grid for r in range(replicates)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(_run_cell, tasks))
    else:
        cells = [_run_cell(t) for t in tasks]
    trials = [t for cell in cells for t in cell]
    c_rank = {c: i for i, c in enumerate(c_grid)}
    trials.sort(key=lambda t: (n_grid.index(t.n), c_rank[t.c], t.replicate))
    return trials


def summarize(trials: list[Trial]) -> list[dict]:
    """Recovery rate and mean Hausdorff distance per (n, c), in first-seen order."""
    groups: dict[tuple[int, float], list[Trial]] = {}
    for t in trials:
        groups.setdefault((t.n, t.c), []).append(t)
    return [
        {
            "n": n,
            "c": c,
            "replicates": len(ts),
            "recovery_rate": sum(t.exact_recovery for t in ts) / len(ts),
            "mean_hausdorff": sum(t.hausdorff for t in ts) / len(ts),
        }
        for (n, c), ts in groups.items()
    ]


def recovery_table(trials: list[Trial]) -> dict[tuple[int, float], float]:
    return {(s["n"], s["c"]): s["recovery_rate"] for s in summarize(trials)}

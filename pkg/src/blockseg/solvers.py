"""Exact, hierarchical and exhaustive maximizers of the penalized likelihood.

A segmentation is a strictly increasing list of integer cuts ``t`` in
``1..m-1``; cut ``t`` separates column ``t`` from column ``t+1`` (the
half-integer point ``t + 0.5``).

Ties (see :func:`scoring.tied`) are broken in favour of fewer cuts, then of
the lexicographically smallest cut list, identically in every solver.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .scoring import IntervalScorer, tied


class SegmentationError(ValueError):
    pass


class InstanceTooLarge(SegmentationError):
    pass


def blocks_of(cuts, m: int) -> list[tuple[int, int]]:
    """Blocks ``[(1, t1), (t1+1, t2), ..., (tk+1, m)]`` induced by ``cuts``."""
    cuts = list(cuts)
    if any(not isinstance(t, (int, np.integer)) for t in cuts):
        raise SegmentationError(f"cuts must be integers: {cuts}")
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise SegmentationError(f"cuts must be strictly increasing: {cuts}")
    if cuts and (cuts[0] < 1 or cuts[-1] > m - 1):
        raise SegmentationError(f"cuts must lie in 1..{m - 1}: {cuts}")
    edges = [0, *cuts, m]
    return [(a + 1, b) for a, b in zip(edges, edges[1:])]


@dataclass
class Segmentation:
    cuts: list[int]
    blocks: list[tuple[int, int]]
    score: float

    @property
    def points(self) -> list[float]:
        """Cuts as half-integer points of independence."""
        return [t + 0.5 for t in self.cuts]


def segmentation_score(scorer: IntervalScorer, cuts) -> float:
    """Sum of penalized block scores over the blocks induced by ``cuts``."""
    return math.fsum(scorer.penalized_score(lo, hi) for lo, hi in blocks_of(cuts, scorer.m))


def _segmentation(scorer: IntervalScorer, cuts) -> Segmentation:
    cuts = [int(t) for t in cuts]
    return Segmentation(cuts, blocks_of(cuts, scorer.m), segmentation_score(scorer, cuts))


def _better(candidate: tuple[float, list[int]], best: tuple[float, list[int]]) -> bool:
    """True if ``candidate`` beats ``best`` under score, then fewer, then lex order."""
    (sa, ca), (sb, cb) = candidate, best
    if not tied(sa, sb):
        return sa > sb
    if len(ca) != len(cb):
        return len(ca) < len(cb)
    return ca < cb


@dataclass
class DpTable:
    """``F[k-1, i-1]``: best score of a segmentation of 1:i into exactly k blocks.

    ``back[k-1, i-1]`` is the right end of the first k-1 blocks in that
    optimum (the last cut), or 0 for k = 1.
    """

    F: np.ndarray
    back: np.ndarray

    def backtrack(self, k: int, i: int | None = None) -> list[int]:
        i = self.F.shape[1] if i is None else i
        cuts = []
        while k > 1:
            t = int(self.back[k - 1, i - 1])
            cuts.append(t)
            i, k = t, k - 1
        return cuts[::-1]


def _fill(S: np.ndarray, kmax: int, early_stop: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Prefix recursion ``F_{k+1}(j) = max_i F_k(i) + S[i, j-1]`` (0-based S)."""
    m = S.shape[0]
    F = np.full((kmax, m), -math.inf)
    back = np.zeros((kmax, m), dtype=np.int64)
    F[0] = S[0]
    best, stale = F[0, m - 1], 0
    for k in range(1, kmax):
        # cand[i, j] = F_k(i+1) + Q~((i+2):(j+1)); rows i index the last cut i+1
        cand = F[k - 1][:-1, None] + S[1:, :]
        arg = np.argmax(cand, axis=0)
        F[k, 1:] = cand[arg[1:], np.arange(1, m)]
        back[k, 1:] = arg[1:] + 1
        if early_stop:
            if F[k, m - 1] > best and not tied(F[k, m - 1], best):
                best, stale = F[k, m - 1], 0
            else:
                stale += 1
                if stale >= early_stop:
                    return F[: k + 1], back[: k + 1]
    return F, back


def dp_table(scorer: IntervalScorer, kmax: int | None = None,
             early_stop: int | None = None) -> DpTable:
    """Tabulate the prefix recursion for k = 1..kmax blocks (default m)."""
    S = scorer.penalized_matrix()
    kmax = scorer.m if kmax is None else min(kmax, scorer.m)
    F, back = _fill(S, kmax, early_stop)
    return DpTable(F, back)


def solve_dp(scorer: IntervalScorer, early_stop: int | None = None) -> Segmentation:
    """Exact maximizer of the penalized log-likelihood over all cut sets.

    The number of blocks is the argmax of ``F_k(m)`` over k; ties go to the
    smallest k. Within that k the lexicographically smallest optimal cut list
    is reconstructed forwards from the same recursion run on the mirrored
    score matrix (best segmentation of each suffix i:m into k blocks).

    ``early_stop=p`` stops filling once ``F_k(m)`` has not improved for p
    consecutive k.
    """
    m = scorer.m
    S = scorer.penalized_matrix()
    F, _ = _fill(S, m, early_stop)
    totals = F[:, m - 1]
    k_hat = 1
    for k in range(2, len(totals) + 1):
        if totals[k - 1] > totals[k_hat - 1] and not tied(totals[k - 1], totals[k_hat - 1]):
            k_hat = k
    if k_hat == 1:
        return _segmentation(scorer, [])

    # G[k-1, i-1]: best split of i:m into k blocks (mirror of the prefix table)
    G, _ = _fill(S[::-1, ::-1].T.copy(), k_hat)
    G = G[:, ::-1]

    cuts: list[int] = []
    pos, left = 1, k_hat
    target = G[left - 1, pos - 1]
    while left > 1:
        for t in range(pos, m - left + 2):
            val = S[pos - 1, t - 1] + G[left - 2, t]
            if tied(val, target):
                cuts.append(t)
                pos, left = t + 1, left - 1
                target = G[left - 1, pos - 1]
                break
        else:  # pragma: no cover - the optimum is always attained
            raise RuntimeError("dynamic programming reconstruction failed")
    return _segmentation(scorer, cuts)


def best_split(scorer: IntervalScorer, lo: int, hi: int) -> int:
    """Start ``i`` of the right part maximizing ``Q~(lo:i-1) + Q~(i:hi)``.

    ``i = lo`` means no split. Ties prefer ``lo``, then the smallest ``i``.
    """
    if lo == hi:
        return lo
    prefix = [scorer.combine(q, p) for q, p in scorer.prefix_scores(lo, hi)]
    suffix = [scorer.combine(q, p) for q, p in scorer.suffix_scores(hi, lo)]
    best_i, best_val = lo, suffix[0]
    for i in range(lo + 1, hi + 1):
        val = prefix[i - 1 - lo] + suffix[i - lo]
        if val > best_val and not tied(val, best_val):
            best_i, best_val = i, val
    return best_i


def solve_hierarchical(scorer: IntervalScorer) -> Segmentation:
    """Recursive binary splitting: best single cut per interval, then recurse."""
    cuts: list[int] = []
    stack = [(1, scorer.m)]
    while stack:
        lo, hi = stack.pop()
        i = best_split(scorer, lo, hi)
        if i == lo:
            continue
        cuts.append(i - 1)
        stack.append((i, hi))
        stack.append((lo, i - 1))
    return _segmentation(scorer, sorted(cuts))


def solve_bruteforce(scorer: IntervalScorer, max_cols: int = 20) -> Segmentation:
    """Enumerate all 2^(m-1) cut sets; reference oracle for small m."""
    m = scorer.m
    if m > max_cols:
        raise InstanceTooLarge(f"{m} columns exceeds brute-force limit {max_cols}")
    best: tuple[float, list[int]] | None = None
    for k in range(m):
        for combo in itertools.combinations(range(1, m), k):
            cand = (segmentation_score(scorer, combo), list(combo))
            if best is None or _better(cand, best):
                best = cand
    return _segmentation(scorer, best[1])


SOLVERS = {
    "dp": solve_dp,
    "hier": solve_hierarchical,
    "brute": solve_bruteforce,
}

"""Block log-likelihoods, penalties and penalized block scores.

All intervals are 1-based and inclusive, ``(lo, hi)`` with ``1 <= lo <= hi <= m``.
Row patterns over an interval are counted by partition refinement: each row
carries a group label, and adding a column splits every group by that
column's symbol, so a sweep over ``L`` columns costs ``O(L n)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .alignment import Alignment


class Penalty(enum.Enum):
    THEORETICAL = "theoretical"
    EMPIRICAL = "empirical"
    EMPIRICAL_FLOORED = "empirical-floored"


@dataclass(frozen=True)
class PenaltyConfig:
    """Penalty family and positive multiplier ``c``.

    theoretical        c * (prod |A_i| - 1), declared alphabets
    empirical          c * (prod ||X_i||_0 - 1), observed symbols
    empirical-floored  c * (max(2, prod ||X_i||_0) - 1)

    The unfloored empirical family gives zero penalty to blocks of constant
    columns, so it does not satisfy the strict superadditivity the
    consistency argument relies on.
    """

    family: Penalty = Penalty.EMPIRICAL_FLOORED
    c: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "family", Penalty(self.family))
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValueError(f"penalty constant must be positive and finite, got {self.c}")


class IntervalRef(NamedTuple):
    lo: int
    hi: int


# Empty interval; its penalized score is 0.
EMPTY = None

TIE_RTOL = 1e-9


def tied(a: float, b: float, rtol: float = TIE_RTOL) -> bool:
    """Shared score-equality test: |a - b| <= rtol * max(1, |a|, |b|)."""
    if a == b:
        return True
    if math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))


def refine(labels: np.ndarray, ngroups: int, column: np.ndarray, k: int):
    """Split groups ``labels`` (values < ngroups) by ``column`` (values < k).

    Returns the new dense labels and the group sizes, in O(n + ngroups*k).
    """
    key = labels * k + column
    full = np.bincount(key, minlength=ngroups * k)
    present = full > 0
    remap = np.cumsum(present) - 1
    return remap[key], full[present]


def loglik_from_sizes(sizes: np.ndarray, n: int) -> float:
    """sum_g n_g (log n_g - log n), evaluated as a function of the size multiset."""
    if sizes.size == 1:
        return 0.0
    hist = np.bincount(sizes)
    v = np.flatnonzero(hist)
    return float(np.sum(hist[v] * v * np.log(v))) - n * math.log(n)


def _to_penalty(prod: int, family: Penalty, c: float) -> float:
    if family is Penalty.EMPIRICAL_FLOORED:
        prod = max(2, prod)
    try:
        return c * float(prod - 1)
    except OverflowError:
        return math.inf


class IntervalScorer:
    """Lazily cached ``Q``, ``p`` and ``Q~ = Q - p log n`` for column intervals."""

    def __init__(self, alignment: Alignment, penalty: PenaltyConfig | None = None,
                 cache: bool = True):
        self.alignment = alignment
        self.config = penalty if penalty is not None else PenaltyConfig()
        self.n, self.m = alignment.shape
        self.log_n = math.log(self.n)
        self.use_cache = cache
        self.cache: dict[tuple[int, int], tuple[float, float]] = {}
        self._data = np.ascontiguousarray(alignment.data.T)
        self._declared = [int(s) for s in alignment.alphabet_sizes()]
        self._observed = [int(s) for s in alignment.observed_sizes()]
        if self.config.family is Penalty.THEORETICAL:
            self._factors = self._declared
        else:
            self._factors = self._observed

    def _check(self, lo: int, hi: int):
        if not (1 <= lo <= hi <= self.m):
            raise IndexError(f"interval {lo}:{hi} outside 1:{self.m}")

    def _sweep(self, lo: int, hi: int, reverse: bool = False):
        """(Q, p) for lo:s, s = lo..hi, or for i:hi, i = hi..lo when reversed."""
        n = self.n
        cols = range(hi, lo - 1, -1) if reverse else range(lo, hi + 1)
        labels = np.zeros(n, dtype=np.int64)
        ngroups = 1
        prod = 1
        family, c = self.config.family, self.config.c
        out = []
        for j in cols:
            labels, sizes = refine(labels, ngroups, self._data[j - 1], self._declared[j - 1])
            ngroups = sizes.size
            prod *= self._factors[j - 1]
            out.append((loglik_from_sizes(sizes, n), _to_penalty(prod, family, c)))
        if self.use_cache:
            for step, qp in enumerate(out):
                key = (hi - step, hi) if reverse else (lo, lo + step)
                self.cache[key] = qp
        return out

    def scores(self, lo: int, hi: int) -> tuple[float, float]:
        """``(Q, p)`` for the interval lo:hi."""
        self._check(lo, hi)
        if self.use_cache:
            hit = self.cache.get((lo, hi))
            if hit is not None:
                return hit
        return self._sweep(lo, hi)[-1]

    def block_loglik(self, lo: int, hi: int) -> float:
        return self.scores(lo, hi)[0]

    def penalty(self, lo: int, hi: int) -> float:
        return self.scores(lo, hi)[1]

    def combine(self, q: float, p: float) -> float:
        # log(1) = 0 times an infinite penalty must not become nan
        if self.log_n == 0.0:
            return q
        return q - p * self.log_n

    def penalized_score(self, lo: int, hi: int) -> float:
        if hi < lo:
            return 0.0
        return self.combine(*self.scores(lo, hi))

    def prefix_scores(self, r: int, hi: int | None = None) -> list[tuple[float, float]]:
        """``(Q, p)`` of r:s for s = r..hi (default m), one refinement sweep."""
        hi = self.m if hi is None else hi
        self._check(r, hi)
        return self._sweep(r, hi)

    def suffix_scores(self, s: int, lo: int = 1) -> list[tuple[float, float]]:
        """``(Q, p)`` of i:s for i = lo..s, one leftward sweep."""
        self._check(lo, s)
        return self._sweep(lo, s, reverse=True)[::-1]

    def penalized_matrix(self) -> np.ndarray:
        """m x m array with ``[r-1, s-1] = Q~(r:s)`` for r <= s, -inf below the diagonal."""
        out = np.full((self.m, self.m), -math.inf)
        for r in range(1, self.m + 1):
            for offset, (q, p) in enumerate(self.prefix_scores(r)):
                out[r - 1, r - 1 + offset] = self.combine(q, p)
        return out


def _bounds(scorer: IntervalScorer, interval) -> tuple[int, int]:
    lo, hi = interval
    scorer._check(lo, hi)
    return lo, hi


def block_loglik(scorer: IntervalScorer, interval) -> float:
    """Maximized block log-likelihood ``Q`` of ``interval``; always <= 0."""
    return scorer.block_loglik(*_bounds(scorer, interval))


def penalty(scorer: IntervalScorer, interval) -> float:
    return scorer.penalty(*_bounds(scorer, interval))


def penalized_score(scorer: IntervalScorer, interval) -> float:
    """``Q - p log n``; the empty interval (``EMPTY``) scores 0."""
    if interval is EMPTY:
        return 0.0
    return scorer.penalized_score(*_bounds(scorer, interval))


def prefix_scores(scorer: IntervalScorer, r: int) -> list[tuple[float, float]]:
    return scorer.prefix_scores(r)


class DivergenceUndefined(ValueError):
    pass


def kl_divergence(p1, p2) -> float:
    """Kullback-Leibler divergence D(p1 || p2) of two tables on one support."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if p1.shape != p2.shape:
        raise ValueError(f"support mismatch: {p1.shape} vs {p2.shape}")
    if (p1 < 0).any() or (p2 < 0).any():
        raise ValueError("probabilities must be non-negative")
    if abs(p1.sum() - 1.0) > 1e-9:
        raise ValueError(f"first table sums to {p1.sum()}, not 1")
    pos = p1 > 0
    if (p2[pos] == 0).any():
        raise DivergenceUndefined("second table is zero where the first is positive")
    d = float(np.sum(p1[pos] * np.log(p1[pos] / p2[pos])))
    return max(d, 0.0)

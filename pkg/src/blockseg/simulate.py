"""Synthetic alignments made of independent Markov-chain blocks.

Draw discipline: one ``numpy.random.Generator(PCG64(seed))`` produces an
``n x m`` array of uniforms in row-major order; cell ``(i, j)`` is turned into
a symbol by inverting the CDF of the block's initial distribution (first
column of a block) or of the transition row of the previous symbol. Replicate
``r`` of a design seeded with ``s`` uses seed ``s + r``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .alignment import Alignment


class DesignError(ValueError):
    pass


def _as_matrix(rows) -> np.ndarray:
    return np.array([[float(Fraction(str(x))) for x in row] for row in rows], dtype=float)


@dataclass(frozen=True)
class BlockModel:
    """A block of ``length`` columns following one order-1 Markov chain."""

    transition: np.ndarray
    length: int
    initial: np.ndarray | None = None

    def __post_init__(self):
        P = np.asarray(self.transition, dtype=float)
        if P.ndim != 2 or P.shape[0] != P.shape[1] or P.shape[0] < 2:
            raise DesignError(f"transition must be a square matrix of size >= 2, got {P.shape}")
        if (P < 0).any() or not np.allclose(P.sum(axis=1), 1.0, rtol=0, atol=1e-12):
            raise DesignError("transition rows must be non-negative and sum to 1")
        init = np.full(P.shape[0], 1.0 / P.shape[0]) if self.initial is None else np.asarray(
            self.initial, dtype=float)
        if init.shape != (P.shape[0],) or (init < 0).any() or abs(init.sum() - 1.0) > 1e-12:
            raise DesignError("initial distribution must be non-negative and sum to 1")
        if int(self.length) < 1:
            raise DesignError("block length must be at least 1")
        object.__setattr__(self, "transition", P)
        object.__setattr__(self, "initial", init)
        object.__setattr__(self, "length", int(self.length))

    @property
    def alphabet_size(self) -> int:
        return self.transition.shape[0]


@dataclass(frozen=True)
class SimulationDesign:
    blocks: tuple[BlockModel, ...]
    n: int = 100
    seed: int = 0
    name: str = "custom"

    @property
    def cols(self) -> int:
        return sum(b.length for b in self.blocks)

    @property
    def true_cuts(self) -> list[int]:
        return np.cumsum([b.length for b in self.blocks])[:-1].tolist()

    def with_sample(self, n: int | None = None, seed: int | None = None) -> "SimulationDesign":
        return replace(self, n=self.n if n is None else n, seed=self.seed if seed is None else seed)


P1 = _as_matrix([["1/6", "5/6"], ["5/6", "1/6"]])
P2 = _as_matrix([["5/6", "1/6"], ["1/6", "5/6"]])
P1_TERNARY = _as_matrix([["1/3", "1/3", "1/3"], ["0", "2/3", "1/3"], ["2/3", "0", "1/3"]])
P2_TERNARY = _as_matrix([["1/2", "1/2", "0"], ["1/3", "1/3", "1/3"], ["1/6", "5/6", "0"]])


def _three_blocks(a, b, name):
    return SimulationDesign((BlockModel(a, 5), BlockModel(b, 5), BlockModel(a, 5)), name=name)


BUILTIN_DESIGNS = {
    "paper-binary": _three_blocks(P1, P2, "paper-binary"),
    "paper-ternary": _three_blocks(P1_TERNARY, P2_TERNARY, "paper-ternary"),
}


def builtin_design(name: str) -> SimulationDesign:
    try:
        return BUILTIN_DESIGNS[name]
    except KeyError:
        raise DesignError(
            f"unknown design {name!r}; choose from {sorted(BUILTIN_DESIGNS)}") from None


def load_design(path: str | os.PathLike) -> SimulationDesign:
    """Read a JSON design.

    ``{"blocks": [{"transition": [["1/6", "5/6"], ...], "length": 5,
    "initial": [...]}, ...], "n": 1000, "seed": 7}``; entries may be
    rationals given as strings, or plain numbers.
    """
    with open(path) as fh:
        spec = json.load(fh)
    try:
        blocks = tuple(
            BlockModel(
                _as_matrix(b["transition"]),
                b["length"],
                None if b.get("initial") is None else _as_matrix([b["initial"]])[0],
            )
            for b in spec["blocks"]
        )
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, DesignError):
            raise
        raise DesignError(f"{path}: malformed design ({exc})") from exc
    if not blocks:
        raise DesignError(f"{path}: design has no blocks")
    return SimulationDesign(blocks, int(spec.get("n", 100)), int(spec.get("seed", 0)),
                            name=os.path.basename(str(path)))


def resolve_design(name_or_path: str) -> SimulationDesign:
    if name_or_path in BUILTIN_DESIGNS:
        return BUILTIN_DESIGNS[name_or_path]
    if os.path.exists(name_or_path):
        return load_design(name_or_path)
    return builtin_design(name_or_path)


def _inverse_cdf(u: np.ndarray, cdf: np.ndarray) -> np.ndarray:
    # cdf rows: (..., k); symbol = number of cumulative values <= u, clipped for rounding
    k = cdf.shape[-1]
    return np.minimum((u[:, None] >= cdf[..., :-1]).sum(axis=-1), k - 1)


def simulate(design: SimulationDesign) -> tuple[Alignment, list[int]]:
    """Draw ``design.n`` i.i.d. rows; returns the alignment and the true cuts.

    Symbol labels are "1".."k" and every column declares its block's full
    alphabet, whether or not each symbol was drawn.
    """
    if design.n < 1:
        raise DesignError(f"sample size must be at least 1, got {design.n}")
    rng = np.random.Generator(np.random.PCG64(design.seed))
    u = rng.random((design.n, design.cols))
    data = np.empty(u.shape, dtype=np.int64)
    alphabets = []
    j = 0
    for block in design.blocks:
        init_cdf = np.cumsum(block.initial)
        trans_cdf = np.cumsum(block.transition, axis=1)
        labels = tuple(str(a + 1) for a in range(block.alphabet_size))
        data[:, j] = _inverse_cdf(u[:, j], np.broadcast_to(init_cdf, (design.n, init_cdf.size)))
        for step in range(1, block.length):
            prev = data[:, j + step - 1]
            data[:, j + step] = _inverse_cdf(u[:, j + step], trans_cdf[prev])
        alphabets.extend([labels] * block.length)
        j += block.length
    return Alignment(data, tuple(alphabets)), design.true_cuts

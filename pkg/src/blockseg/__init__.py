"""Penalized-likelihood segmentation of aligned categorical sequences into independent blocks."""

from .alignment import Alignment, load_fasta, load_matrix, observed_alphabet_size
from .scoring import (
    EMPTY,
    IntervalScorer,
    Penalty,
    PenaltyConfig,
    block_loglik,
    kl_divergence,
    penalized_score,
    penalty,
    prefix_scores,
)
from .simulate import BlockModel, SimulationDesign, builtin_design, simulate
from .solvers import (
    Segmentation,
    dp_table,
    segmentation_score,
    solve_bruteforce,
    solve_dp,
    solve_hierarchical,
)

__version__ = "0.1.0"

__all__ = [
    "Alignment", "load_fasta", "load_matrix", "observed_alphabet_size",
    "EMPTY", "IntervalScorer", "Penalty", "PenaltyConfig", "block_loglik", "kl_divergence",
    "penalized_score", "penalty", "prefix_scores",
    "BlockModel", "SimulationDesign", "builtin_design", "simulate",
    "Segmentation", "dp_table", "segmentation_score", "solve_bruteforce", "solve_dp",
    "solve_hierarchical",
]

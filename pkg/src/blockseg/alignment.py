"""Aligned categorical samples: n sequences by m columns, per-column alphabets."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class AlignmentError(ValueError):
    """Raised for malformed or empty alignment input."""


class RaggedAlignmentError(AlignmentError):
    pass


class EmptyInputError(AlignmentError):
    pass


@dataclass(frozen=True, eq=False)
class Alignment:
    """Immutable n x m matrix of column-local symbol codes.

    ``data[i, j] = k`` means row ``i`` carries symbol ``alphabets[j][k]`` in
    column ``j`` (0-based internally; the public column arguments of the
    scoring and solver API are 1-based).
    """

    data: np.ndarray
    alphabets: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        data = np.array(self.data, dtype=np.int64, copy=True)
        if data.ndim != 2:
            raise AlignmentError("alignment data must be two-dimensional")
        n, m = data.shape
        if n < 1 or m < 1:
            raise EmptyInputError("alignment needs at least one row and one column")
        alphabets = tuple(tuple(str(s) for s in col) for col in self.alphabets)
        if len(alphabets) != m:
            raise AlignmentError(f"expected {m} column alphabets, got {len(alphabets)}")
        for j, alpha in enumerate(alphabets):
            if not alpha:
                raise AlignmentError(f"column {j + 1} has an empty alphabet")
            if len(set(alpha)) != len(alpha):
                raise AlignmentError(f"column {j + 1} alphabet has duplicate labels")
            col = data[:, j]
            if col.min() < 0 or col.max() >= len(alpha):
                raise AlignmentError(f"column {j + 1} has codes outside its alphabet")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "alphabets", alphabets)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def alphabet_sizes(self) -> np.ndarray:
        """Declared alphabet size of every column."""
        return np.array([len(a) for a in self.alphabets], dtype=np.int64)

    def observed_sizes(self) -> np.ndarray:
        """Number of distinct symbols actually present in every column."""
        return np.array(
            [np.unique(self.data[:, j]).size for j in range(self.cols)], dtype=np.int64
        )

    def labels(self) -> list[list[str]]:
        return [
            [self.alphabets[j][k] for j, k in enumerate(row)] for row in self.data.tolist()
        ]

    def take_rows(self, order: Sequence[int]) -> "Alignment":
        return Alignment(self.data[np.asarray(order)], self.alphabets)

    def __eq__(self, other):
        if not isinstance(other, Alignment):
            return NotImplemented
        return self.alphabets == other.alphabets and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"Alignment(rows={self.rows}, cols={self.cols})"

    @classmethod
    def from_labels(cls, rows: Sequence[Sequence[str]]) -> "Alignment":
        """Build from a rectangular table of labels; alphabets sorted per column."""
        rows = [list(r) for r in rows]
        if not rows:
            raise EmptyInputError("no sequences given")
        width = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != width:
                raise RaggedAlignmentError(
                    f"row {i + 1} has {len(r)} fields, expected {width}"
                )
        if width == 0:
            raise EmptyInputError("sequences have zero length")
        alphabets = []
        data = np.empty((len(rows), width), dtype=np.int64)
        for j in range(width):
            column = [r[j] for r in rows]
            alpha = sorted(set(column))
            index = {s: k for k, s in enumerate(alpha)}
            data[:, j] = [index[s] for s in column]
            alphabets.append(tuple(alpha))
        return cls(data, tuple(alphabets))


def observed_alphabet_size(a: Alignment, col: int) -> int:
    """Distinct symbols occurring in 1-based column ``col``."""
    if not 1 <= col <= a.cols:
        raise IndexError(f"column {col} out of range 1..{a.cols}")
    return int(np.unique(a.data[:, col - 1]).size)


def read_fasta_records(path: str | os.PathLike) -> list[tuple[str, str]]:
    records: list[tuple[str, str]] = []
    header = None
    chunks: list[str] = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith(";"):
                continue
            if line.startswith(">"):
                if header is not None:
                    records.append((header, "".join(chunks)))
                header = line[1:].strip()
                chunks = []
            else:
                if header is None:
                    raise AlignmentError("sequence data before first '>' header")
                chunks.append("".join(line.split()))
    if header is not None:
        records.append((header, "".join(chunks)))
    return records


def load_fasta(path: str | os.PathLike) -> Alignment:
    """Load an aligned FASTA file. Letters are upper-cased; '-' is a symbol."""
    records = read_fasta_records(path)
    if not records:
        raise EmptyInputError(f"{path}: no FASTA records")
    width = len(records[0][1])
    for name, seq in records:
        if len(seq) != width:
            raise RaggedAlignmentError(
                f"record {name!r} has length {len(seq)}, expected {width}"
            )
    return Alignment.from_labels([list(seq.upper()) for _, seq in records])


def load_matrix(path: str | os.PathLike, delimiter: str = ",") -> Alignment:
    """Load a delimited symbol matrix, one sequence per line, no header."""
    if len(delimiter) != 1:
        raise ValueError("delimiter must be a single character")
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            rows.append([tok.strip() for tok in line.split(delimiter)])
    if not rows:
        raise EmptyInputError(f"{path}: no rows")
    return Alignment.from_labels(rows)


def write_matrix(a: Alignment, path: str | os.PathLike, delimiter: str = ",") -> None:
    with open(path, "w") as fh:
        for row in a.labels():
            fh.write(delimiter.join(row) + "\n")

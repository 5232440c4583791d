"""Label sets and their unipolar / bipolar matrix encodings.

Training targets are the bipolar matrix (+1 present, -1 absent) and raw
network outputs are thresholded back to bipolar form at zero before being
decoded into label sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .errors import LabelError

Polarity = Literal["unipolar", "bipolar"]

_POLARITY_VALUES = {"unipolar": (0, 1), "bipolar": (-1, 1)}


@dataclass(frozen=True)
class LabelSet:
    """Subset of ``range(size)`` assigned to one instance.

    Examples
    --------
    >>> LabelSet.of([2, 0], 3)
    LabelSet(members=frozenset({0, 2}), size=3)
    """

    members: frozenset
    size: int

    def __post_init__(self):
        if not isinstance(self.members, frozenset):
            object.__setattr__(self, "members", frozenset(self.members))
        if isinstance(self.size, bool) or int(self.size) != self.size or self.size < 1:
            raise LabelError(f"label space size must be a positive integer, got {self.size!r}")
        object.__setattr__(self, "size", int(self.size))
        for m in self.members:
            if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
                raise LabelError(f"label index {m!r} is not an integer")
            if not 0 <= m < self.size:
                raise LabelError(f"label index {m} outside [0, {self.size})")
        object.__setattr__(self, "members", frozenset(int(m) for m in self.members))

    @classmethod
    def of(cls, members: Iterable[int], size: int) -> "LabelSet":
        return cls(frozenset(members), size)

    @classmethod
    def from_indicator(cls, row) -> "LabelSet":
        """Build from a 0/1 (or boolean) indicator vector."""
        row = np.asarray(row)
        return cls(frozenset(np.flatnonzero(row).tolist()), row.shape[0])

    def indicator(self) -> np.ndarray:
        out = np.zeros(self.size, dtype=bool)
        out[list(self.members)] = True
        return out

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, item):
        return item in self.members


@dataclass(frozen=True, eq=False)
class LabelMatrix:
    """N x L matrix whose entries are exactly the declared polarity's values."""

    values: np.ndarray
    polarity: Polarity

    def __post_init__(self):
        if self.polarity not in _POLARITY_VALUES:
            raise LabelError(f"unknown polarity {self.polarity!r}")
        values = np.asarray(self.values)
        if values.ndim != 2:
            raise LabelError(f"label matrix must be 2-D, got shape {values.shape}")
        low, high = _POLARITY_VALUES[self.polarity]
        bad = (values != low) & (values != high)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise LabelError(
                f"entry ({i}, {j}) = {values[i, j]!r} is not a {self.polarity} value"
            )
        values = values.astype(np.int8)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def shape(self):
        return self.values.shape

    def __eq__(self, other):
        if not isinstance(other, LabelMatrix):
            return NotImplemented
        return self.polarity == other.polarity and np.array_equal(self.values, other.values)

    __hash__ = None


def _check_sizes(labels: Sequence[LabelSet], L: int) -> None:
    for i, ls in enumerate(labels):
        if ls.size != L:
            raise LabelError(f"instance {i}: label space size {ls.size} != {L}")


def indicator_matrix(labels: Sequence[LabelSet], L: int) -> np.ndarray:
    """Boolean N x L membership matrix."""
    _check_sizes(labels, L)
    out = np.zeros((len(labels), L), dtype=bool)
    for i, ls in enumerate(labels):
        if ls.members:
            out[i, list(ls.members)] = True
    return out


def encode_unipolar(labels: Sequence[LabelSet], L: int) -> LabelMatrix:
    return LabelMatrix(indicator_matrix(labels, L).astype(np.int8), "unipolar")


def encode_bipolar(labels: Sequence[LabelSet], L: int) -> LabelMatrix:
    """Entry (i, j) is +1 when label j belongs to instance i, else -1."""
    ind = indicator_matrix(labels, L)
    return LabelMatrix(np.where(ind, 1, -1).astype(np.int8), "bipolar")


def unipolar_to_bipolar(matrix: LabelMatrix) -> LabelMatrix:
    if matrix.polarity != "unipolar":
        raise LabelError(f"expected a unipolar matrix, got {matrix.polarity}")
    return LabelMatrix(2 * matrix.values.astype(np.int8) - 1, "bipolar")


def decode_bipolar(matrix) -> list:
    """Inverse of :func:`encode_bipolar`.

    Accepts a bipolar :class:`LabelMatrix` or a raw array, which is
    validated first.
    """
    if isinstance(matrix, LabelMatrix):
        if matrix.polarity != "bipolar":
            raise LabelError(f"expected a bipolar matrix, got {matrix.polarity}")
    else:
        matrix = LabelMatrix(np.asarray(matrix), "bipolar")
    L = matrix.shape[1]
    return [LabelSet(frozenset(np.flatnonzero(row > 0).tolist()), L) for row in matrix.values]


def bipolar_step(raw) -> LabelMatrix:
    """Threshold raw outputs at zero: ``>= 0`` maps to +1, ``< 0`` to -1."""
    raw = np.asarray(raw, dtype=np.float64)
    if raw.ndim != 2:
        raise LabelError(f"raw outputs must be 2-D, got shape {raw.shape}")
    finite = np.isfinite(raw)
    if not finite.all():
        i, j = np.argwhere(~finite)[0]
        raise LabelError(f"non-finite raw output {raw[i, j]} at row {i}, column {j}")
    return LabelMatrix(np.where(raw >= 0.0, 1, -1).astype(np.int8), "bipolar")

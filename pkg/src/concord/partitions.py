"""Crisp and fuzzy partitions and their pairwise equivalence matrices.

A fuzzy partition of ``n`` objects into ``K`` clusters is an ``n x K``
row-stochastic membership matrix. A crisp partition is the special case
whose rows are one-hot. Partitions are compared through the ``n x n``
matrix of pairwise fuzzy equivalence degrees

    E(i, j) = 1 - 0.5 * sum_k |w[i, k] - w[j, k]|

which equals 1 exactly when two objects share a membership pattern and 0
when their membership mass is disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "ROW_SUM_TOL",
    "CrispPartition",
    "FuzzyPartition",
    "EquivalenceMatrix",
    "from_labels",
    "equivalence_matrix",
    "pair_index",
    "pair_from_index",
    "n_pairs",
]

ROW_SUM_TOL = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class CrispPartition:
    """Hard assignment of ``n`` objects to clusters ``0 .. k-1``.

    Parameters
    ----------
    labels : sequence of int
        Cluster id of every object.
    k : int, optional
        Number of clusters. Defaults to ``max(labels) + 1``; pass it
        explicitly to allow trailing empty clusters.
    """

    __slots__ = ("labels", "k")

    def __init__(self, labels: Sequence[int] | np.ndarray, k: int | None = None):
        arr = np.asarray(labels)
        if arr.ndim != 1:
            raise ValueError(f"labels must be one-dimensional, got shape {arr.shape}")
        if arr.size == 0:
            raise ValueError("labels must be non-empty")
        if not np.issubdtype(arr.dtype, np.integer):
            as_int = arr.astype(np.int64)
            if not np.array_equal(as_int, arr):
                raise ValueError("labels must be integers")
            arr = as_int
        arr = arr.astype(np.int64)
        if arr.size < 2:
            raise ValueError(f"a partition needs at least 2 objects, got {arr.size}")
        if arr.min() < 0:
            raise ValueError(f"labels must be non-negative, got {int(arr.min())}")
        inferred = int(arr.max()) + 1
        if k is None:
            k = inferred
        elif k < inferred:
            raise ValueError(f"k={k} is smaller than max(label)+1={inferred}")
        self.labels = _frozen(arr.copy())
        self.k = int(k)

    @property
    def n(self) -> int:
        return self.labels.size

    def to_fuzzy(self) -> "FuzzyPartition":
        w = np.zeros((self.n, self.k))
        w[np.arange(self.n), self.labels] = 1.0
        return FuzzyPartition(w)

    def __repr__(self) -> str:
        return f"CrispPartition(n={self.n}, k={self.k})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CrispPartition):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.labels, other.labels)

    __hash__ = None  # type: ignore[assignment]


class FuzzyPartition:
    """Row-stochastic membership matrix of shape ``(n, K)``.

    Rows must sum to 1 within ``ROW_SUM_TOL`` and every entry must lie in
    [0, 1]. Rows that violate the sum condition are rejected unless
    ``renormalize=True``, in which case each row is divided by its sum.
    """

    __slots__ = ("memberships",)

    def __init__(self, memberships: np.ndarray | Sequence[Sequence[float]], renormalize: bool = False):
        w = np.array(memberships, dtype=np.float64)
        if w.ndim == 1:
            w = w[:, None]
        if w.ndim != 2:
            raise ValueError(f"memberships must be a 2-D matrix, got shape {w.shape}")
        n, K = w.shape
        if n < 2:
            raise ValueError(f"a partition needs at least 2 objects, got {n}")
        if K < 1:
            raise ValueError("a partition needs at least one cluster")
        if not np.all(np.isfinite(w)):
            raise ValueError("memberships contain non-finite values")
        if w.min() < 0.0 or w.max() > 1.0 + ROW_SUM_TOL:
            bad = np.argwhere((w < 0.0) | (w > 1.0 + ROW_SUM_TOL))[0]
            raise ValueError(
                f"membership at row {bad[0]}, column {bad[1]} is {w[bad[0], bad[1]]!r}, outside [0, 1]"
            )
        sums = w.sum(axis=1)
        if renormalize:
            if np.any(sums <= 0.0):
                raise ValueError(f"row {int(np.argmax(sums <= 0.0))} has zero total membership")
            w = w / sums[:, None]
        else:
            off = np.abs(sums - 1.0) > ROW_SUM_TOL
            if np.any(off):
                i = int(np.argmax(off))
                raise ValueError(f"row {i} sums to {sums[i]!r}, not 1 (tolerance {ROW_SUM_TOL:g})")
        np.clip(w, 0.0, 1.0, out=w)
        self.memberships = _frozen(w)

    @property
    def n(self) -> int:
        return self.memberships.shape[0]

    @property
    def k(self) -> int:
        return self.memberships.shape[1]

    @property
    def is_crisp(self) -> bool:
        w = self.memberships
        return bool(np.all((w == 0.0) | (w == 1.0)))

    def to_crisp(self) -> CrispPartition:
        """Hard labels by maximum membership (ties go to the lowest column)."""
        return CrispPartition(np.argmax(self.memberships, axis=1), k=self.k)

    def __repr__(self) -> str:
        return f"FuzzyPartition(n={self.n}, k={self.k})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FuzzyPartition):
            return NotImplemented
        return np.array_equal(self.memberships, other.memberships)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class EquivalenceMatrix:
    """Pairwise equivalence degrees of one partition.

    ``dense`` is the symmetric ``n x n`` matrix with unit diagonal and
    ``upper_tri`` holds its ``m = n(n-1)/2`` strictly-upper entries in
    row-major pair order, ``upper_tri[pair_index(i, j, n)] == dense[i, j]``.
    """

    dense: np.ndarray
    upper_tri: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.dense.shape[0]

    @property
    def m(self) -> int:
        return self.upper_tri.size


def as_fuzzy(P: FuzzyPartition | CrispPartition) -> FuzzyPartition:
    if isinstance(P, CrispPartition):
        return P.to_fuzzy()
    if isinstance(P, FuzzyPartition):
        return P
    raise TypeError(f"expected a FuzzyPartition or CrispPartition, got {type(P).__name__}")


def from_labels(labels: Sequence[int] | np.ndarray) -> FuzzyPartition:
    """One-hot membership matrix with ``K = max(label) + 1`` columns.

    >>> from_labels([0, 0, 1, 0]).memberships
    array([[1., 0.],
           [1., 0.],
           [0., 1.],
           [1., 0.]])
    """
    return CrispPartition(labels).to_fuzzy()


def equivalence_matrix(P: FuzzyPartition | CrispPartition) -> EquivalenceMatrix:
    """Fuzzy equivalence of every object pair under partition ``P``.

    The L1 distance between two membership rows ranges over [0, 2], so it
    is halved before being subtracted from 1. One-hot inputs give exact
    0/1 entries.
    """
    w = as_fuzzy(P).memberships
    n = w.shape[0]
    l1 = np.zeros((n, n))
    # column loop keeps memory at O(n^2) instead of O(n^2 K)
    for col in w.T:
        l1 += np.abs(col[:, None] - col[None, :])
    dense = 1.0 - 0.5 * l1
    np.clip(dense, 0.0, 1.0, out=dense)
    np.fill_diagonal(dense, 1.0)
    # exact symmetry regardless of summation order
    dense = np.triu(dense) + np.triu(dense, 1).T
    upper = dense[np.triu_indices(n, 1)]
    return EquivalenceMatrix(_frozen(dense), _frozen(upper))


def n_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Row-major flat index of pair ``(i, j)``, ``0 <= i < j < n``."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got i={i}, j={j}, n={n}")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def pair_from_index(idx: int, n: int) -> tuple[int, int]:
    """Inverse of :func:`pair_index`."""
    m = n_pairs(n)
    if not 0 <= idx < m:
        raise ValueError(f"pair index {idx} out of range for n={n} (m={m})")
    i = 0
    row_len = n - 1
    while idx >= row_len:
        idx -= row_len
        i += 1
        row_len -= 1
    return i, i + 1 + idx

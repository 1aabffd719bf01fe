"""Pair-counting indices for crisp partitions.

Every pair of objects falls into one of four classes when two hard
partitions P and Q are compared:

    a  together in P and together in Q
    b  together in P only
    c  together in Q only
    d  apart in both

The Rand index, Hubert-Arabie adjusted Rand index, Jaccard, Fowlkes-Mallows,
Mirkin and Dice indices are all functions of these counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .partitions import CrispPartition, n_pairs

__all__ = [
    "UndefinedIndexError",
    "PairCounts",
    "ContingencyTable",
    "contingency_table",
    "pair_counts",
    "rand_index",
    "ari_cardinals",
    "ari_contingency",
    "related_indices",
]


class UndefinedIndexError(ArithmeticError):
    """An index is 0/0 for the given inputs."""


LabelsLike = CrispPartition | Sequence[int] | np.ndarray


def _labels(P: LabelsLike) -> np.ndarray:
    if isinstance(P, CrispPartition):
        return P.labels
    return CrispPartition(P).labels


@dataclass(frozen=True)
class PairCounts:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ValueError(f"pair counts must be non-negative: {self}")

    @property
    def m(self) -> int:
        return self.a + self.b + self.c + self.d

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class ContingencyTable:
    """Cross-tabulation ``counts[i, j] = |P_i ∩ Q_j|`` with its marginals."""

    counts: np.ndarray

    @property
    def row_marginals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_marginals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def n(self) -> int:
        return int(self.counts.sum())


def contingency_table(P: LabelsLike, Q: LabelsLike) -> ContingencyTable:
    p, q = _labels(P), _labels(Q)
    if p.size != q.size:
        raise ValueError(f"partitions have different sizes: {p.size} vs {q.size}")
    kp = P.k if isinstance(P, CrispPartition) else int(p.max()) + 1
    kq = Q.k if isinstance(Q, CrispPartition) else int(q.max()) + 1
    counts = np.zeros((kp, kq), dtype=np.int64)
    np.add.at(counts, (p, q), 1)
    counts.setflags(write=False)
    return ContingencyTable(counts)


def _comb2(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    return x * (x - 1) // 2


def _counts_from_table(t: ContingencyTable) -> PairCounts:
    a = int(_comb2(t.counts).sum())
    same_p = int(_comb2(t.row_marginals).sum())
    same_q = int(_comb2(t.col_marginals).sum())
    b = same_p - a
    c = same_q - a
    d = n_pairs(t.n) - a - b - c
    return PairCounts(a, b, c, d)


def _counts_from_scan(p: np.ndarray, q: np.ndarray) -> PairCounts:
    iu = np.triu_indices(p.size, 1)
    sp = (p[:, None] == p[None, :])[iu]
    sq = (q[:, None] == q[None, :])[iu]
    a = int(np.count_nonzero(sp & sq))
    b = int(np.count_nonzero(sp & ~sq))
    c = int(np.count_nonzero(~sp & sq))
    d = int(np.count_nonzero(~sp & ~sq))
    return PairCounts(a, b, c, d)


def pair_counts(P: LabelsLike, Q: LabelsLike, method: str = "table") -> PairCounts:
    """Count the four pair classes between two crisp partitions.

    ``method="table"`` works from the contingency table in O(n + K_P K_Q);
    ``method="scan"`` visits all n(n-1)/2 pairs and serves as a check.

    >>> pair_counts([0, 0, 1, 0], [0, 1, 1, 0])
    PairCounts(a=1, b=2, c=1, d=2)
    """
    p, q = _labels(P), _labels(Q)
    if p.size != q.size:
        raise ValueError(f"partitions have different sizes: {p.size} vs {q.size}")
    if method == "table":
        return _counts_from_table(contingency_table(P, Q))
    if method == "scan":
        return _counts_from_scan(p, q)
    raise ValueError(f"unknown method {method!r}; use 'table' or 'scan'")


def rand_index(pc: PairCounts) -> float:
    """Share of pairs on which the two partitions agree, ``(a + d) / m``."""
    if pc.m == 0:
        raise UndefinedIndexError("Rand index needs at least one pair")
    return (pc.a + pc.d) / pc.m


def ari_cardinals(pc: PairCounts) -> float:
    """Hubert-Arabie adjusted Rand index written in the four pair counts.

    The denominator vanishes only when ``b = c = 0`` and one of ``a, d`` is
    zero, i.e. both partitions are the same single cluster or the same set
    of singletons. Identical partitions get 1.0 there.
    """
    a, b, c, d = (float(x) for x in pc.as_tuple())
    num = 2.0 * (a * d - b * c)
    den = b * b + c * c + 2.0 * a * d + (a + d) * (c + b)
    if den == 0.0:
        if b == 0 and c == 0:
            return 1.0
        raise UndefinedIndexError(f"adjusted Rand index is 0/0 for {pc}")
    return num / den


def ari_contingency(t: ContingencyTable) -> float:
    """Adjusted Rand index from binomial coefficients of the contingency table."""
    n = t.n
    if n < 2:
        raise UndefinedIndexError("adjusted Rand index needs n >= 2")
    sum_ij = float(_comb2(t.counts).sum())
    sum_a = float(_comb2(t.row_marginals).sum())
    sum_b = float(_comb2(t.col_marginals).sum())
    expected = sum_a * sum_b / float(n_pairs(n))
    max_index = 0.5 * (sum_a + sum_b)
    den = max_index - expected
    if den == 0.0:
        if sum_ij == sum_a == sum_b:
            return 1.0
        raise UndefinedIndexError("adjusted Rand index is 0/0 for this table")
    return (sum_ij - expected) / den


def _ratio(num: float, den: float) -> float:
    return num / den if den != 0 else math.nan


def related_indices(pc) -> dict[str, float]:
    """Jaccard, Fowlkes-Mallows, Mirkin and Dice from pair cardinals.

    Works on integer :class:`PairCounts` and on real-valued fuzzy cardinals
    alike. An index whose denominator is zero is reported as ``nan``.
    Mirkin is an unnormalized count, ``2 (b + c)``.
    """
    a, b, c = float(pc.a), float(pc.b), float(pc.c)
    return {
        "jaccard": _ratio(a, a + b + c),
        "fowlkes_mallows": _ratio(a, math.sqrt((a + b) * (a + c))),
        "mirkin": 2.0 * (b + c),
        "dice": _ratio(2.0 * a, 2.0 * a + b + c),
    }

"""Fuzzy C-means, probabilistic-distance clustering and Lloyd k-means.

All three use Euclidean distance and seeded restarts: restart ``r`` of a run
with seed ``s`` draws from the stream ``child_rng(s, r)``, and the restart
with the lowest final objective is returned.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from ._rng import child_rng
from .partitions import CrispPartition, FuzzyPartition

__all__ = [
    "ConvergenceWarning",
    "Dataset",
    "ClusteringConfig",
    "FuzzyClustering",
    "CrispClustering",
    "fcm",
    "pd_membership",
    "pd_center_update",
    "true_fuzzy_partition",
    "pd_cluster",
    "kmeans",
    "kmeans_plus_plus",
]


class ConvergenceWarning(UserWarning):
    pass


class Dataset:
    """Numeric data matrix of ``n`` objects by ``p`` features."""

    __slots__ = ("points",)

    def __init__(self, points):
        x = np.array(points, dtype=np.float64)
        if x.ndim == 1:
            x = x[:, None]
        if x.ndim != 2:
            raise ValueError(f"points must be a 2-D matrix, got shape {x.shape}")
        if x.shape[0] < 2:
            raise ValueError(f"need at least 2 objects, got {x.shape[0]}")
        if x.shape[1] < 1:
            raise ValueError("need at least one feature")
        if not np.all(np.isfinite(x)):
            raise ValueError("data contain non-finite values")
        x.setflags(write=False)
        self.points = x

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def p(self) -> int:
        return self.points.shape[1]

    def standardized(self) -> "Dataset":
        """Column z-scores; constant columns are only centered."""
        x = self.points
        sd = x.std(axis=0)
        sd[sd == 0.0] = 1.0
        return Dataset((x - x.mean(axis=0)) / sd)

    def __repr__(self) -> str:
        return f"Dataset(n={self.n}, p={self.p})"


def _points(X) -> np.ndarray:
    return X.points if isinstance(X, Dataset) else Dataset(X).points


@dataclass(frozen=True)
class ClusteringConfig:
    k: int
    max_iter: int = 300
    tol: float = 1e-6
    seed: int = 0
    fuzzifier: float = 2.0
    n_init: int = 5
    standardize: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.fuzzifier <= 1:
            raise ValueError(f"fuzzifier must be > 1, got {self.fuzzifier}")
        if self.max_iter < 1 or self.n_init < 1:
            raise ValueError("max_iter and n_init must be >= 1")

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "max_iter": self.max_iter,
            "tol": self.tol,
            "seed": self.seed,
            "fuzzifier": self.fuzzifier,
            "n_init": self.n_init,
            "standardize": self.standardize,
        }


@dataclass(frozen=True)
class FuzzyClustering:
    partition: FuzzyPartition
    centers: np.ndarray
    objective: float
    history: list[float] = field(repr=False)
    n_iter: int
    converged: bool

    def __iter__(self):
        # (partition, centers) unpacking
        yield self.partition
        yield self.centers


@dataclass(frozen=True)
class CrispClustering:
    partition: CrispPartition
    centers: np.ndarray
    inertia: float
    history: list[float] = field(repr=False)
    n_iter: int
    converged: bool

    @property
    def labels(self) -> np.ndarray:
        return self.partition.labels


def _prepare(X, cfg: ClusteringConfig) -> np.ndarray:
    ds = X if isinstance(X, Dataset) else Dataset(X)
    if cfg.standardize:
        ds = ds.standardized()
    if cfg.k > ds.n:
        raise ValueError(f"k={cfg.k} exceeds the number of objects n={ds.n}")
    return ds.points


def _zero_distance_rows(D: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    zero = D == 0.0
    return zero.any(axis=1), zero


def _inverse_weights(D: np.ndarray, power: float) -> np.ndarray:
    """Rows proportional to ``D ** -power``; zero distances share the mass."""
    U = np.empty_like(D)
    hit, zero = _zero_distance_rows(D)
    ok = ~hit
    if np.any(ok):
        d = D[ok]
        # divide by the row minimum first so the powers cannot overflow
        r = d / d.min(axis=1, keepdims=True)
        w = r ** (-power)
        U[ok] = w / w.sum(axis=1, keepdims=True)
    if np.any(hit):
        z = zero[hit].astype(np.float64)
        U[hit] = z / z.sum(axis=1, keepdims=True)
    return U


# ---------------------------------------------------------------- fuzzy C-means


def _fcm_once(x: np.ndarray, cfg: ClusteringConfig, rng: np.random.Generator):
    n = x.shape[0]
    m = cfg.fuzzifier
    U = rng.dirichlet(np.ones(cfg.k), size=n)
    centers = None
    history = []
    converged = False
    it = 0
    for it in range(1, cfg.max_iter + 1):
        Um = U**m
        new_centers = (Um.T @ x) / Um.sum(axis=0)[:, None]
        D = cdist(x, new_centers)
        U = _inverse_weights(D, 2.0 / (m - 1.0))
        history.append(float(np.sum((U**m) * D**2)))
        shift = np.inf if centers is None else float(np.max(np.linalg.norm(new_centers - centers, axis=1)))
        centers = new_centers
        if shift < cfg.tol:
            converged = True
            break
    return U, centers, history, it, converged


def fcm(X, cfg: ClusteringConfig) -> FuzzyClustering:
    """Fuzzy C-means (Bezdek) with Dirichlet-initialized memberships.

    Alternates fuzzifier-weighted center means with the membership update
    ``u_ik = 1 / Σ_t (d_ik / d_it) ** (2 / (fuzzifier - 1))`` until the
    largest center shift drops below ``cfg.tol``. ``history`` records the
    objective ``Σ u_ik^fuzzifier d_ik²`` after each iteration of the
    returned restart.
    """
    x = _prepare(X, cfg)
    if cfg.k == 1:
        return FuzzyClustering(
            FuzzyPartition(np.ones((x.shape[0], 1))),
            x.mean(axis=0, keepdims=True),
            float(np.sum((x - x.mean(axis=0)) ** 2)),
            [],
            0,
            True,
        )
    best = None
    for r in range(cfg.n_init):
        out = _fcm_once(x, cfg, child_rng(cfg.seed, r))
        if best is None or out[2][-1] < best[2][-1]:
            best = out
    U, centers, history, n_iter, converged = best
    if not converged:
        warnings.warn(f"fcm did not converge in {cfg.max_iter} iterations", ConvergenceWarning, stacklevel=2)
    return FuzzyClustering(FuzzyPartition(U), centers, history[-1], history, n_iter, converged)


# ----------------------------------------------------- probabilistic distance


def pd_membership(X, centers) -> FuzzyPartition:
    """Membership probabilities inversely proportional to center distance.

    ``p_k(x) = Π_{j≠k} d_j(x) / Σ_t Π_{j≠t} d_j(x)``, which for positive
    distances equals ``(1/d_k) / Σ_t (1/d_t)`` and is evaluated that way to
    avoid overflowing products. A point lying on one or more centers is
    shared equally among them.
    """
    x = _points(X)
    c = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    if c.shape[1] != x.shape[1]:
        raise ValueError(f"centers have {c.shape[1]} features, data have {x.shape[1]}")
    if not np.all(np.isfinite(c)):
        raise ValueError("centers contain non-finite values")
    return FuzzyPartition(_inverse_weights(cdist(x, c), 1.0))


def pd_center_update(x: np.ndarray, D: np.ndarray, U: np.ndarray) -> np.ndarray:
    """Centers as weighted means with weights ``p_k(x)² / d_k(x)``.

    Taken from the PD-clustering literature; kept separate so another
    update rule can be dropped in.
    """
    floor = 1e-12 * max(float(D.max()), 1.0)
    w = U**2 / np.maximum(D, floor)
    return (w.T @ x) / w.sum(axis=0)[:, None]


def _pd_objective(D: np.ndarray, U: np.ndarray) -> float:
    # Σ_x Σ_k p_k² d_k; per point this is the constant p_k d_k
    return float(np.sum(U**2 * D))


def _lloyd_step(x: np.ndarray, centers: np.ndarray) -> np.ndarray:
    labels = np.argmin(cdist(x, centers, "sqeuclidean"), axis=1)
    out = centers.copy()
    for j in range(centers.shape[0]):
        members = labels == j
        if members.any():
            out[j] = x[members].mean(axis=0)
    return out


def _pd_once(x: np.ndarray, cfg: ClusteringConfig, rng: np.random.Generator):
    # seeds sitting on a data point would be pinned there by the 1/d weight
    centers = _lloyd_step(x, kmeans_plus_plus(x, cfg.k, rng))
    converged = False
    history = []
    it = 0
    for it in range(1, cfg.max_iter + 1):
        D = cdist(x, centers)
        U = _inverse_weights(D, 1.0)
        history.append(_pd_objective(D, U))
        new_centers = pd_center_update(x, D, U)
        shift = float(np.max(np.linalg.norm(new_centers - centers, axis=1)))
        centers = new_centers
        if shift < cfg.tol:
            converged = True
            break
    D = cdist(x, centers)
    U = _inverse_weights(D, 1.0)
    return U, centers, _pd_objective(D, U), history, it, converged


def pd_cluster(X, cfg: ClusteringConfig) -> FuzzyClustering:
    """Probabilistic-distance clustering.

    Alternates :func:`pd_membership` with :func:`pd_center_update` from
    k-means++ seeds until the largest center shift is below ``cfg.tol``.
    Failing to converge within ``max_iter`` returns the current state with
    ``converged=False`` and a :class:`ConvergenceWarning`.
    """
    x = _prepare(X, cfg)
    if cfg.k == 1:
        center = x.mean(axis=0, keepdims=True)
        obj = float(np.sum(np.linalg.norm(x - center, axis=1)))
        return FuzzyClustering(FuzzyPartition(np.ones((x.shape[0], 1))), center, obj, [obj], 0, True)
    best = None
    for r in range(cfg.n_init):
        out = _pd_once(x, cfg, child_rng(cfg.seed, r))
        if best is None or out[2] < best[2]:
            best = out
    U, centers, objective, history, n_iter, converged = best
    if not converged:
        warnings.warn(f"pd_cluster did not converge in {cfg.max_iter} iterations", ConvergenceWarning, stacklevel=2)
    return FuzzyClustering(FuzzyPartition(U), centers, objective, history, n_iter, converged)


def true_fuzzy_partition(X, labels: CrispPartition | Sequence[int]) -> FuzzyPartition:
    """PD memberships around the class means of labeled data."""
    x = _points(X)
    lab = labels if isinstance(labels, CrispPartition) else CrispPartition(labels)
    if lab.n != x.shape[0]:
        raise ValueError(f"{lab.n} labels for {x.shape[0]} objects")
    counts = np.bincount(lab.labels, minlength=lab.k)
    if np.any(counts == 0):
        raise ValueError(f"class {int(np.argmax(counts == 0))} is empty")
    centers = np.zeros((lab.k, x.shape[1]))
    np.add.at(centers, lab.labels, x)
    centers /= counts[:, None]
    return pd_membership(x, centers)


# ------------------------------------------------------------------- k-means


def kmeans_plus_plus(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = x.shape[0]
    idx = [int(rng.integers(n))]
    d2 = np.sum((x - x[idx[0]]) ** 2, axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            nxt = int(rng.choice(n, p=d2 / total))
        else:
            nxt = int(rng.integers(n))
        idx.append(nxt)
        d2 = np.minimum(d2, np.sum((x - x[nxt]) ** 2, axis=1))
    return x[idx].copy()


def _kmeans_once(x: np.ndarray, cfg: ClusteringConfig, rng: np.random.Generator):
    centers = kmeans_plus_plus(x, cfg.k, rng)
    history = []
    labels = None
    converged = False
    it = 0
    for it in range(1, cfg.max_iter + 1):
        D2 = cdist(x, centers, "sqeuclidean")
        new_labels = np.argmin(D2, axis=1)
        counts = np.bincount(new_labels, minlength=cfg.k)
        for j in np.flatnonzero(counts == 0):
            # empty cluster: move its center to the worst-served point
            far = int(np.argmax(D2[np.arange(x.shape[0]), new_labels]))
            centers[j] = x[far]
            D2[:, j] = np.sum((x - x[far]) ** 2, axis=1)
            new_labels = np.argmin(D2, axis=1)
            counts = np.bincount(new_labels, minlength=cfg.k)
        new_centers = centers.copy()
        for j in range(cfg.k):
            members = new_labels == j
            if members.any():
                new_centers[j] = x[members].mean(axis=0)
        history.append(float(np.sum((x - new_centers[new_labels]) ** 2)))
        shift = float(np.max(np.linalg.norm(new_centers - centers, axis=1)))
        same = labels is not None and np.array_equal(labels, new_labels)
        centers, labels = new_centers, new_labels
        if same or shift < cfg.tol:
            converged = True
            break
    return labels, centers, history[-1], history, it, converged


def kmeans(X, cfg: ClusteringConfig) -> CrispClustering:
    """Lloyd's k-means with k-means++ seeding."""
    x = _prepare(X, cfg)
    best = None
    for r in range(cfg.n_init):
        out = _kmeans_once(x, cfg, child_rng(cfg.seed, r))
        if best is None or out[2] < best[2]:
            best = out
    labels, centers, inertia, history, n_iter, converged = best
    if not converged:
        warnings.warn(f"kmeans did not converge in {cfg.max_iter} iterations", ConvergenceWarning, stacklevel=2)
    return CrispClustering(CrispPartition(labels, k=cfg.k), centers, inertia, history, n_iter, converged)

"""Synthetic Gaussian designs and the experimental studies.

* :func:`study1` fits fuzzy C-means to 2-, 3- and 4-center mixtures at three
  spread levels (and to structureless data) and compares each fit with the
  generating labels.
* :func:`study2` fits fuzzy C-means with C = 2..8 to seven mixtures and
  compares every fit with the fit at the true C.
* :func:`study3` compares PD-clustering estimates with the PD memberships
  implied by the known classes.
* :func:`bias_experiment` compares the adjusted Rand index with the ACI of
  k-means solutions on random mixtures.

All randomness is keyed by the study seed and the cell coordinates, so each
cell can be recomputed on its own.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import __version__
from ._rng import child_rng, child_seed
from .clustering import ClusteringConfig, Dataset, fcm, kmeans, pd_cluster, true_fuzzy_partition
from .crisp import ari_cardinals, pair_counts
from .expectation import ExpectationConfig
from .fuzzy import aci
from .partitions import CrispPartition

__all__ = [
    "STUDY1_MEANS",
    "STUDY1_SPREADS",
    "STUDY2_MEANS",
    "GaussianMixtureSpec",
    "Row",
    "StudyResult",
    "BiasResult",
    "split_evenly",
    "gen_mixture",
    "study1_datasets",
    "study1",
    "study2_datasets",
    "study2",
    "study3",
    "bias_experiment",
]

STUDY1_MEANS = np.array([[-2.0, -2.0], [2.0, 2.0], [0.0, 0.0], [-2.0, 2.0]])
STUDY1_SPREADS = (0.01, 0.25, 1.0)
STUDY1_N = 100
STUDY1_RANDOM_SCALE = 0.8
STUDY2_MEANS = np.array(
    [[-2.0, -2.0], [2.0, 2.0], [0.0, 0.0], [-2.0, 2.0], [2.0, -2.0], [-4.0, 4.0], [4.0, -4.0], [9.0, 9.0]]
)
STUDY2_N = 120
SPLIT_RULE = "total n split evenly across components; the first n mod K components get one extra point"

# stream tags keep the per-study seed spaces disjoint
_S1, _S2, _S3, _BIAS = 1, 2, 3, 4


@dataclass(frozen=True)
class GaussianMixtureSpec:
    """Isotropic Gaussian mixture.

    Component ``k`` has mean ``means[k]`` and covariance
    ``cov_scale[k] * diag(axis_scale)``; ``cov_scale`` may be one scalar for
    all components and ``axis_scale`` defaults to ones (covariance ``α I``).
    Give either ``n`` (split evenly) or ``sizes`` (points per component).
    """

    means: np.ndarray
    cov_scale: float | Sequence[float] = 1.0
    n: int | None = None
    sizes: Sequence[int] | None = None
    axis_scale: Sequence[float] | None = None
    seed: int = 0

    def validate(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        means = np.atleast_2d(np.asarray(self.means, dtype=np.float64))
        K, p = means.shape
        if K < 1 or p < 1:
            raise ValueError("need at least one component with at least one dimension")
        scale = np.broadcast_to(np.asarray(self.cov_scale, dtype=np.float64), (K,)).copy()
        axis = np.ones(p) if self.axis_scale is None else np.asarray(self.axis_scale, dtype=np.float64)
        if axis.shape != (p,):
            raise ValueError(f"axis_scale must have length {p}")
        if np.any(scale <= 0) or np.any(axis <= 0):
            raise ValueError("covariance scales must be positive")
        if (self.n is None) == (self.sizes is None):
            raise ValueError("give exactly one of n and sizes")
        if self.sizes is None:
            sizes = split_evenly(self.n, K)
        else:
            sizes = np.asarray(self.sizes, dtype=np.int64)
            if sizes.shape != (K,) or np.any(sizes < 0):
                raise ValueError(f"sizes must be {K} non-negative counts")
        if sizes.sum() < 2:
            raise ValueError("mixture must have at least 2 points")
        var = scale[:, None] * axis[None, :]
        return means, var, sizes


def split_evenly(n: int, K: int) -> np.ndarray:
    base, extra = divmod(int(n), K)
    return np.array([base + (k < extra) for k in range(K)], dtype=np.int64)


def gen_mixture(spec: GaussianMixtureSpec) -> tuple[Dataset, CrispPartition]:
    """Draw points component by component; returns data and true labels."""
    means, var, sizes = spec.validate()
    rng = child_rng(spec.seed)
    blocks = [means[k] + rng.standard_normal((sizes[k], means.shape[1])) * np.sqrt(var[k]) for k in range(len(sizes))]
    labels = np.repeat(np.arange(len(sizes)), sizes)
    return Dataset(np.vstack(blocks)), CrispPartition(labels, k=len(sizes))


class Row(NamedTuple):
    design: str
    index: str
    value: float
    column: str = ""


@dataclass
class StudyResult:
    """Long-format result rows plus the metadata needed to rerun them."""

    name: str
    rows: list[Row] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, design: str, index: str, value: float, column: str = "") -> None:
        self.rows.append(Row(design, index, float(value), column))

    def value(self, design: str, index: str, column: str = "") -> float:
        for r in self.rows:
            if r.design == design and r.index == index and r.column == column:
                return r.value
        raise KeyError((design, index, column))

    def designs(self) -> list[str]:
        return list(dict.fromkeys(r.design for r in self.rows))

    def columns(self) -> list[str]:
        return list(dict.fromkeys(r.column for r in self.rows))

    def indices(self) -> list[str]:
        return list(dict.fromkeys(r.index for r in self.rows))

    def matrix(self, index: str) -> tuple[list[str], list[str], np.ndarray]:
        """Pivot ``index`` into a designs-by-columns array."""
        designs, columns = self.designs(), self.columns()
        out = np.full((len(designs), len(columns)), np.nan)
        for r in self.rows:
            if r.index == index:
                out[designs.index(r.design), columns.index(r.column)] = r.value
        return designs, columns, out

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["design", "column", "index", "value"])
            for r in self.rows:
                w.writerow([r.design, r.column, r.index, f"{r.value:.17g}"])

    def write_matrix_csv(self, path, index: str) -> None:
        designs, columns, mat = self.matrix(index)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["design"] + columns)
            for d, row in zip(designs, mat):
                w.writerow([d] + [f"{v:.17g}" for v in row])

    def write_metadata(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.metadata, fh, indent=2, sort_keys=True, default=_json_default)
            fh.write("\n")

    def to_text(self) -> str:
        """Aligned table, 4 decimals; one block per column group."""
        lines = []
        for index in self.indices():
            designs, columns, mat = self.matrix(index)
            head = [index] + [c or "value" for c in columns]
            body = [[d] + [f"{v:.4f}" for v in row] for d, row in zip(designs, mat)]
            widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
            fmt = lambda r: "  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths)))
            lines.append(fmt(head))
            lines.append("  ".join("-" * w for w in widths))
            lines.extend(fmt(r) for r in body)
            lines.append("")
        return "\n".join(lines)


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _base_metadata(name: str, seed: int, expectation: ExpectationConfig, clustering: dict) -> dict:
    return {
        "study": name,
        "version": __version__,
        "seed": seed,
        "expectation": expectation.as_dict(),
        "clustering": clustering,
        "split_rule": SPLIT_RULE,
    }


# ------------------------------------------------------------------ study 1


def study1_datasets(seed: int) -> list[tuple[str, Dataset, CrispPartition]]:
    """The nine structured designs followed by three structureless ones.

    Structureless data are drawn from N(0, 0.8 I) and labeled in turn
    (object ``i`` gets class ``i mod C``).
    """
    out = []
    for C in (2, 3, 4):
        for s, alpha in enumerate(STUDY1_SPREADS, start=1):
            spec = GaussianMixtureSpec(STUDY1_MEANS[:C], alpha, n=STUDY1_N, seed=child_seed(seed, _S1, C, s))
            X, y = gen_mixture(spec)
            out.append((f"{C} Centers, Sigma{s}", X, y))
    for C in (2, 3, 4):
        rng = child_rng(seed, _S1, C, 0)
        X = Dataset(rng.standard_normal((STUDY1_N, 2)) * np.sqrt(STUDY1_RANDOM_SCALE))
        out.append((f"Random {C} Centers", X, CrispPartition(np.arange(STUDY1_N) % C, k=C)))
    return out


def study1(seed: int, expectation: ExpectationConfig | None = None, n_init: int = 5) -> StudyResult:
    """Fuzzy C-means fit versus generating labels, NDC and ACI per design."""
    expectation = expectation or ExpectationConfig()
    res = StudyResult("study1")
    fits = {}
    for i, (name, X, y) in enumerate(study1_datasets(seed)):
        cfg = ClusteringConfig(k=y.k, seed=child_seed(seed, _S1, 100, i), n_init=n_init)
        fit = fcm(X, cfg)
        r = aci(fit.partition, y, expectation)
        res.add(name, "NDC", r.ndc)
        res.add(name, "ACI", r.aci)
        fits[name] = {"k": y.k, "n": X.n, "seed": cfg.seed, "converged": fit.converged, "n_iter": fit.n_iter}
    res.metadata = _base_metadata("study1", seed, expectation, {"algorithm": "fcm", "fuzzifier": 2.0, "n_init": n_init})
    res.metadata["cells"] = fits
    return res


# ------------------------------------------------------------------ study 2


def study2_datasets(seed: int) -> tuple[np.ndarray, list[tuple[str, Dataset, CrispPartition]]]:
    """Seven mixtures with 2..8 centers sharing ``diag(alpha)`` covariance.

    ``alpha`` holds two U(0.1, 1) draws, one variance per coordinate.
    """
    alpha = child_rng(seed, _S2, 0).uniform(0.1, 1.0, size=2)
    out = []
    for d in range(1, 8):
        C = d + 1
        spec = GaussianMixtureSpec(STUDY2_MEANS[:C], 1.0, n=STUDY2_N, axis_scale=alpha, seed=child_seed(seed, _S2, d))
        X, y = gen_mixture(spec)
        out.append((f"Data set {d}", X, y))
    return alpha, out


def study2(
    seed: int,
    expectation: ExpectationConfig | None = None,
    compare_to: str = "fcm",
    n_init: int = 5,
) -> StudyResult:
    """NDC and ACI of the C = 2..8 fits of each dataset.

    With ``compare_to="fcm"`` each fit is compared with the fit at the
    dataset's true C, so the diagonal is exactly 1. ``compare_to="truth"``
    compares with the generating labels instead.
    """
    if compare_to not in ("fcm", "truth"):
        raise ValueError(f"compare_to must be 'fcm' or 'truth', got {compare_to!r}")
    expectation = expectation or ExpectationConfig()
    alpha, datasets = study2_datasets(seed)
    res = StudyResult("study2")
    cells = {}
    for d, (name, X, y) in enumerate(datasets, start=1):
        fits = {}
        for C in range(2, 9):
            cfg = ClusteringConfig(k=C, seed=child_seed(seed, _S2, 100 + d, C), n_init=n_init)
            fits[C] = fcm(X, cfg)
            cells[f"{name}|C={C}"] = {"seed": cfg.seed, "converged": fits[C].converged, "n_iter": fits[C].n_iter}
        reference = fits[y.k].partition if compare_to == "fcm" else y
        for C in range(2, 9):
            r = aci(fits[C].partition, reference, expectation)
            res.add(name, "NDC", r.ndc, f"C={C}")
            res.add(name, "ACI", r.aci, f"C={C}")
    res.metadata = _base_metadata("study2", seed, expectation, {"algorithm": "fcm", "fuzzifier": 2.0, "n_init": n_init})
    res.metadata.update({"alpha": alpha, "compare_to": compare_to, "cells": cells})
    return res


# ------------------------------------------------------------------ study 3


def study3(
    seed: int,
    datasets: Sequence[tuple[str, Dataset, CrispPartition]] | None = None,
    expectation: ExpectationConfig | None = None,
    n_init: int = 5,
    standardize: bool = False,
) -> StudyResult:
    """PD-clustering estimate versus the true fuzzy partition.

    ``datasets`` defaults to :func:`study1_datasets`. Each dataset yields a
    ``true_vs_true`` cell (identically 1) and a ``true_vs_estimated`` cell
    for both NDC and ACI.
    """
    expectation = expectation or ExpectationConfig()
    if datasets is None:
        datasets = study1_datasets(seed)
    res = StudyResult("study3")
    cells = {}
    for i, (name, X, y) in enumerate(datasets):
        X = X if isinstance(X, Dataset) else Dataset(X)
        if standardize:
            X = X.standardized()
        y = y if isinstance(y, CrispPartition) else CrispPartition(y)
        truth = true_fuzzy_partition(X, y)
        cfg = ClusteringConfig(k=y.k, seed=child_seed(seed, _S3, i), n_init=n_init)
        est = pd_cluster(X, cfg)
        same = aci(truth, truth, expectation)
        cross = aci(truth, est.partition, expectation)
        res.add(name, "NDC", same.ndc, "true_vs_true")
        res.add(name, "ACI", same.aci, "true_vs_true")
        res.add(name, "NDC", cross.ndc, "true_vs_estimated")
        res.add(name, "ACI", cross.aci, "true_vs_estimated")
        cells[name] = {"k": y.k, "n": X.n, "p": X.p, "seed": cfg.seed, "converged": est.converged, "n_iter": est.n_iter}
    res.metadata = _base_metadata(
        "study3", seed, expectation, {"algorithm": "pd", "n_init": n_init, "standardize": standardize}
    )
    res.metadata["cells"] = cells
    return res


# ------------------------------------------------------------ bias experiment


@dataclass
class BiasResult:
    mean_diff: float
    rows: list[dict]
    metadata: dict

    @property
    def max_abs_diff(self) -> float:
        return max(abs(r["diff"]) for r in self.rows)

    def write_csv(self, path) -> None:
        keys = ["dataset", "n", "k", "p", "alpha", "seed", "ari", "aci", "diff"]
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=keys)
            w.writeheader()
            for r in self.rows:
                w.writerow({k: (f"{r[k]:.17g}" if isinstance(r[k], float) else r[k]) for k in keys})

    def write_metadata(self, path) -> None:
        meta = dict(self.metadata, mean_diff=self.mean_diff, max_abs_diff=self.max_abs_diff)
        with open(path, "w") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True, default=_json_default)
            fh.write("\n")


def bias_experiment(
    n_datasets: int,
    seed: int,
    expectation: ExpectationConfig | None = None,
    n_range: tuple[int, int] = (100, 1200),
    k_range: tuple[int, int] = (2, 10),
    p_range: tuple[int, int] = (2, 10),
    alpha_range: tuple[float, float] = (0.1, 3.0),
    mean_box: float = 5.0,
    n_init: int = 3,
) -> BiasResult:
    """Mean of ``ACI - ARI`` between k-means labels and true labels.

    Each dataset draws ``n``, ``C`` and ``p`` uniformly from the inclusive
    ranges, a common spread ``alpha`` from ``alpha_range`` and ``C`` means
    uniformly from ``[-mean_box, mean_box]^p``.
    """
    if n_datasets < 1:
        raise ValueError("n_datasets must be >= 1")
    expectation = expectation or ExpectationConfig()
    rows = []
    for t in range(n_datasets):
        rng = child_rng(seed, _BIAS, t)
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        C = int(rng.integers(k_range[0], k_range[1] + 1))
        p = int(rng.integers(p_range[0], p_range[1] + 1))
        alpha = float(rng.uniform(*alpha_range))
        means = rng.uniform(-mean_box, mean_box, size=(C, p))
        data_seed = child_seed(seed, _BIAS, t, 1)
        X, y = gen_mixture(GaussianMixtureSpec(means, alpha, n=n, seed=data_seed))
        fit = kmeans(X, ClusteringConfig(k=C, seed=child_seed(seed, _BIAS, t, 2), n_init=n_init))
        ari = ari_cardinals(pair_counts(fit.partition, y))
        cfg = ExpectationConfig(expectation.mode, expectation.h, child_seed(expectation.seed, t), expectation.enumeration_limit)
        r = aci(fit.partition, y, cfg)
        rows.append(
            {"dataset": t, "n": n, "k": C, "p": p, "alpha": alpha, "seed": data_seed, "ari": ari, "aci": r.aci, "diff": r.aci - ari}
        )
    mean_diff = float(np.mean([r["diff"] for r in rows]))
    meta = {
        "study": "bias",
        "version": __version__,
        "seed": seed,
        "n_datasets": n_datasets,
        "expectation": expectation.as_dict(),
        "ranges": {"n": n_range, "k": k_range, "p": p_range, "alpha": alpha_range, "mean_box": mean_box},
        "clustering": {"algorithm": "kmeans", "n_init": n_init},
        "split_rule": SPLIT_RULE,
    }
    return BiasResult(mean_diff, rows, meta)

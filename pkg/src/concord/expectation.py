"""Expected NDC under the permutation null model.

Given the upper-triangular equivalence vectors ``p`` and ``q`` of two
partitions, the null model shuffles the entries of ``q`` uniformly at
random, breaking the pairing between the two matrices while keeping each
one's set of values. Three routes to the expectation of

    NDC(p, q[π]) = 1 - mean_i |p_i - q[π(i)]|

are provided:

``closed_form``
    Under a uniform permutation, position ``i`` meets every ``q_j`` with
    probability ``1/m``, so the expectation is exactly
    ``1 - (1/m²) Σ_i Σ_j |p_i - q_j|``. Evaluated in O(m log m) with a sort
    and prefix sums.
``enumeration``
    Averages over all ``m!`` permutations. Only feasible for tiny ``m``;
    kept as an oracle.
``monte_carlo``
    Averages over ``h`` random permutations. Permutations are drawn in
    blocks of ``mc_block_size(m)``; block ``b`` shuffles each of its copies
    of ``q`` by Fisher-Yates (``Generator.permuted``) using the PCG64 stream
    keyed by ``(seed, b)``. Block boundaries depend only on ``m``, so the estimate
    does not depend on how blocks are split across threads.

Permuting only ``q`` loses nothing: shuffling both vectors induces the same
distribution of relative alignments.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._rng import child_rng

__all__ = [
    "MODES",
    "ExpectationConfig",
    "expected_ndc",
    "expected_ndc_closed_form",
    "expected_ndc_enumeration",
    "expected_ndc_monte_carlo",
    "mc_block_size",
    "worker_count",
]

MODES = ("closed_form", "enumeration", "monte_carlo")
_ALIASES = {"closed": "closed_form", "enum": "enumeration", "mc": "monte_carlo"}
_MAX_ENUMERATION = 10


@dataclass(frozen=True)
class ExpectationConfig:
    """How the expected NDC is computed.

    ``h`` and ``seed`` only matter for Monte Carlo. ``enumeration_limit``
    caps ``m`` for exhaustive enumeration (8 means at most 40320 orderings).
    """

    mode: str = "closed_form"
    h: int = 1000
    seed: int = 0
    enumeration_limit: int = 8

    def __post_init__(self):
        mode = _ALIASES.get(self.mode, self.mode)
        if mode not in MODES:
            raise ValueError(f"unknown expectation mode {self.mode!r}; choose from {MODES}")
        object.__setattr__(self, "mode", mode)
        if self.h < 1:
            raise ValueError(f"h must be >= 1, got {self.h}")
        if not 1 <= self.enumeration_limit <= _MAX_ENUMERATION:
            raise ValueError(f"enumeration_limit must be in [1, {_MAX_ENUMERATION}], got {self.enumeration_limit}")

    def as_dict(self) -> dict:
        return {"mode": self.mode, "h": self.h, "seed": self.seed, "enumeration_limit": self.enumeration_limit}


def worker_count() -> int:
    """Thread cap from ``CONCORD_THREADS``, defaulting to the CPU count."""
    env = os.environ.get("CONCORD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"CONCORD_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _vectors(p, q) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(p, dtype=np.float64).ravel()
    q = np.asarray(q, dtype=np.float64).ravel()
    if p.size != q.size:
        raise ValueError(f"vectors differ in length: {p.size} vs {q.size}")
    if p.size == 0:
        raise ValueError("vectors are empty")
    return p, q


def cross_abs_sum(p: np.ndarray, q: np.ndarray) -> float:
    """``Σ_i Σ_j |p_i - q_j|`` via sorting and prefix sums."""
    qs = np.sort(q)
    prefix = np.concatenate(([0.0], np.cumsum(qs)))
    total = prefix[-1]
    k = np.searchsorted(qs, p, side="left")
    below = p * k - prefix[k]
    above = (total - prefix[k]) - p * (qs.size - k)
    return float(np.sum(below + above))


def expected_ndc_closed_form(p, q) -> float:
    """Exact permutation expectation of the NDC."""
    p, q = _vectors(p, q)
    m = p.size
    return 1.0 - cross_abs_sum(p, q) / (m * m)


def expected_ndc_enumeration(p, q, limit: int = 8) -> float:
    """Mean NDC over all ``m!`` orderings of ``q``."""
    p, q = _vectors(p, q)
    m = p.size
    if m > limit:
        raise ValueError(f"m={m} exceeds the enumeration limit {limit} ({math.factorial(m)} permutations)")
    perms = np.array(list(itertools.permutations(range(m))), dtype=np.intp)
    values = 1.0 - np.abs(p[None, :] - q[perms]).mean(axis=1)
    return float(values.mean())


_BLOCK_CELLS = 1 << 18


def mc_block_size(m: int) -> int:
    """Permutations per random stream; bounds a block to ~2 MB."""
    return max(1, min(256, _BLOCK_CELLS // m))


def _mc_block(p: np.ndarray, q: np.ndarray, seed: int, block: int, count: int) -> np.ndarray:
    # shuffle copies of q in place; cheaper than permuting indices and gathering
    rows = np.tile(q, (count, 1))
    child_rng(seed, block).permuted(rows, axis=1, out=rows)
    np.subtract(rows, p, out=rows)
    np.abs(rows, out=rows)
    return 1.0 - rows.sum(axis=1) / p.size


def expected_ndc_monte_carlo(p, q, h: int = 1000, seed: int = 0, workers: int | None = None) -> tuple[float, float]:
    """Monte Carlo estimate of the expected NDC and its standard error.

    Returns ``(estimate, std_error)`` with ``std_error = s / sqrt(h)`` where
    ``s`` is the sample standard deviation (0 when ``h == 1``).
    """
    p, q = _vectors(p, q)
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    size = mc_block_size(p.size)
    blocks = [(b, min(size, h - b * size)) for b in range(-(-h // size))]
    workers = worker_count() if workers is None else max(1, workers)
    workers = min(workers, len(blocks))
    if workers == 1:
        parts = [_mc_block(p, q, seed, b, count) for b, count in blocks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda bc: _mc_block(p, q, seed, *bc), blocks))
    values = np.concatenate(parts)
    estimate = float(values.mean())
    std_error = float(values.std(ddof=1) / math.sqrt(h)) if h > 1 else 0.0
    return estimate, std_error


def expected_ndc(p, q, cfg: ExpectationConfig | None = None) -> tuple[float, float | None]:
    """Dispatch on ``cfg.mode``; returns ``(value, std_error or None)``."""
    cfg = cfg or ExpectationConfig()
    if cfg.mode == "closed_form":
        return expected_ndc_closed_form(p, q), None
    if cfg.mode == "enumeration":
        return expected_ndc_enumeration(p, q, limit=cfg.enumeration_limit), None
    return expected_ndc_monte_carlo(p, q, h=cfg.h, seed=cfg.seed)

"""Seeded random streams.

Every random draw in the package goes through :func:`child_rng`. A stream is
a PCG64 generator whose state is derived by ``numpy.random.SeedSequence``
from the entropy tuple ``(seed, *keys)``. The same tuple yields the same
stream on every platform, and streams for distinct key tuples are
statistically independent, so work can be split across threads or
processes without changing results.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def _entropy(seed: int, keys: tuple[int, ...]) -> list[int]:
    return [int(seed) & _MASK64] + [int(k) & _MASK64 for k in keys]


def child_rng(seed: int, *keys: int) -> np.random.Generator:
    """Return the PCG64 generator keyed by ``(seed, *keys)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(_entropy(seed, keys))))


def child_seed(seed: int, *keys: int) -> int:
    """Derive a 63-bit integer seed from ``(seed, *keys)``."""
    ss = np.random.SeedSequence(_entropy(seed, keys))
    return int(ss.generate_state(2, dtype=np.uint32).view(np.uint64)[0] >> np.uint64(1))

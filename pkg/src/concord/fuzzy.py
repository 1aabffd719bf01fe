"""Concordance between fuzzy partitions and the adjusted concordance index.

Two partitions agree on a pair of objects to the degree that their
equivalence values for that pair match, ``conc = 1 - |E_P - E_Q|``. The
normalized degree of concordance (NDC) is the mean concordance over all
pairs and reduces to the Rand index on crisp partitions. The adjusted
concordance index (ACI) rescales NDC against its expectation under the
permutation null model:

    ACI = (NDC - E[NDC]) / (1 - E[NDC])
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .crisp import related_indices
from .expectation import ExpectationConfig, expected_ndc
from .partitions import CrispPartition, EquivalenceMatrix, FuzzyPartition, as_fuzzy, equivalence_matrix

__all__ = [
    "DEGENERATE_TOL",
    "PairCardinals",
    "ComparisonResult",
    "concordance_degree",
    "discordance_degree",
    "ndc",
    "fuzzy_distance",
    "fuzzy_cardinals",
    "cardinal_indices",
    "aci",
]

DEGENERATE_TOL = 1e-12


def _check_unit(x: np.ndarray, name: str) -> None:
    if np.any(x < 0.0) or np.any(x > 1.0):
        raise ValueError(f"{name} must lie in [0, 1]")


def concordance_degree(eP, eQ):
    """Degree to which two equivalence values agree, ``1 - |eP - eQ|``."""
    eP = np.asarray(eP, dtype=np.float64)
    eQ = np.asarray(eQ, dtype=np.float64)
    _check_unit(eP, "eP")
    _check_unit(eQ, "eQ")
    out = 1.0 - np.abs(eP - eQ)
    return float(out) if out.ndim == 0 else out


def discordance_degree(eP, eQ):
    eP = np.asarray(eP, dtype=np.float64)
    eQ = np.asarray(eQ, dtype=np.float64)
    _check_unit(eP, "eP")
    _check_unit(eQ, "eQ")
    out = np.abs(eP - eQ)
    return float(out) if out.ndim == 0 else out


Comparable = EquivalenceMatrix | FuzzyPartition | CrispPartition | np.ndarray


def _upper(E: Comparable) -> np.ndarray:
    if isinstance(E, EquivalenceMatrix):
        return E.upper_tri
    if isinstance(E, (FuzzyPartition, CrispPartition)):
        return equivalence_matrix(E).upper_tri
    # already a vector of pair equivalences
    v = np.asarray(E, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"pair vector must be one-dimensional, got shape {v.shape}")
    _check_unit(v, "pair vector")
    return v


def _pair_vectors(EP: Comparable, EQ: Comparable) -> tuple[np.ndarray, np.ndarray]:
    p, q = _upper(EP), _upper(EQ)
    if p.size != q.size:
        raise ValueError(f"partitions cover different numbers of pairs: {p.size} vs {q.size}")
    return p, q


def fuzzy_distance(EP: Comparable, EQ: Comparable) -> float:
    """Mean discordance over all pairs; a pseudo-metric on partitions."""
    p, q = _pair_vectors(EP, EQ)
    return float(np.sum(np.abs(p - q)) / p.size)


def ndc(EP: Comparable, EQ: Comparable) -> float:
    """Normalized degree of concordance, ``1 - mean |E_P - E_Q|``.

    Accepts equivalence matrices or partitions.
    """
    return 1.0 - fuzzy_distance(EP, EQ)


@dataclass(frozen=True)
class PairCardinals:
    """Fuzzy pair cardinals summed over all ``m`` pairs.

    Per pair, ``a + d`` is the concordance and ``b + c`` the discordance, so
    the four values sum to 1. ``per_pair`` holds the ``(4, m)`` array of
    unsummed values when it was requested.
    """

    a: float
    b: float
    c: float
    d: float
    m: int
    per_pair: np.ndarray | None = field(default=None, repr=False, compare=False)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


def fuzzy_cardinals(EP: Comparable, EQ: Comparable, keep_per_pair: bool = False) -> PairCardinals:
    """Product t-norm cardinals of each pair, summed.

    For a pair with equivalences ``p`` (in P) and ``q`` (in Q)::

        a = (1 - |p - q|) * p * q
        d = (1 - |p - q|) * (1 - p * q)
        b = max(p - q, 0)
        c = max(q - p, 0)

    On 0/1 equivalence matrices these are the crisp pair-class indicators.
    """
    p, q = _pair_vectors(EP, EQ)
    conc = 1.0 - np.abs(p - q)
    pq = p * q
    a = conc * pq
    d = conc * (1.0 - pq)
    b = np.maximum(p - q, 0.0)
    c = np.maximum(q - p, 0.0)
    per_pair = np.stack([a, b, c, d]) if keep_per_pair else None
    if per_pair is not None:
        per_pair.setflags(write=False)
    return PairCardinals(
        a=float(np.sum(a)),
        b=float(np.sum(b)),
        c=float(np.sum(c)),
        d=float(np.sum(d)),
        m=p.size,
        per_pair=per_pair,
    )


def cardinal_indices(pc: PairCardinals) -> dict[str, float]:
    """Rand, Jaccard, Dice, Fowlkes-Mallows and Mirkin on fuzzy cardinals.

    Undefined entries (zero denominator) are ``nan``. The ``rand`` entry
    coincides with :func:`ndc` because per-pair ``a + d`` is the
    concordance.
    """
    out = {"rand": (pc.a + pc.d) / pc.m if pc.m else math.nan}
    out.update(related_indices(pc))
    return out


@dataclass(frozen=True)
class ComparisonResult:
    """NDC, its null expectation and the adjusted index for one comparison.

    ``aci`` is the raw value and may be negative; ``aci_clamped`` is
    ``max(aci, 0)``. ``degenerate`` is set when ``1 - expected_ndc`` is
    below ``DEGENERATE_TOL``; ``aci`` is then reported as 0.
    """

    ndc: float
    expected_ndc: float
    aci: float
    aci_clamped: float
    cardinals: PairCardinals
    expectation_mode: str
    mc_std_error: float | None
    m: int
    n: int
    config: ExpectationConfig
    degenerate: bool = False

    @property
    def indices(self) -> dict[str, float]:
        return cardinal_indices(self.cardinals)

    def as_dict(self) -> dict:
        return {
            "ndc": self.ndc,
            "expected_ndc": self.expected_ndc,
            "aci": self.aci,
            "aci_clamped": self.aci_clamped,
            "degenerate": self.degenerate,
            "mc_std_error": self.mc_std_error,
            "cardinals": dict(zip("abcd", self.cardinals.as_tuple())),
            "indices": self.indices,
            "config": self.config.as_dict(),
            "m": self.m,
            "n": self.n,
        }


def adjust(value: float, expected: float) -> tuple[float, bool]:
    """Chance-correct ``value``; returns ``(index, degenerate)``."""
    den = 1.0 - expected
    if den <= DEGENERATE_TOL:
        return 0.0, True
    return (value - expected) / den, False


def aci(
    P: FuzzyPartition | CrispPartition,
    Q: FuzzyPartition | CrispPartition,
    cfg: ExpectationConfig | None = None,
    keep_per_pair: bool = False,
) -> ComparisonResult:
    """Compare two partitions of the same objects.

    Builds both equivalence matrices, the NDC, the expected NDC under
    ``cfg`` (closed form by default) and the adjusted concordance index.

    Examples
    --------
    >>> P = FuzzyPartition([[.29, .71], [.79, .21], [.41, .59], [.88, .12]])
    >>> Q = FuzzyPartition([[.94, .06], [.05, .95], [.53, .47], [.89, .11]])
    >>> r = aci(P, Q)
    >>> round(r.ndc, 4), round(r.expected_ndc, 4), round(r.aci, 3)
    (0.6367, 0.6972, -0.2)
    """
    cfg = cfg or ExpectationConfig()
    Pf, Qf = as_fuzzy(P), as_fuzzy(Q)
    if Pf.n != Qf.n:
        raise ValueError(f"partitions have different sizes: {Pf.n} vs {Qf.n}")
    EP, EQ = equivalence_matrix(Pf), equivalence_matrix(Qf)
    value = ndc(EP, EQ)
    expected, se = expected_ndc(EP.upper_tri, EQ.upper_tri, cfg)
    index, degenerate = adjust(value, expected)
    return ComparisonResult(
        ndc=value,
        expected_ndc=expected,
        aci=index,
        aci_clamped=max(index, 0.0),
        cardinals=fuzzy_cardinals(EP, EQ, keep_per_pair=keep_per_pair),
        expectation_mode=cfg.mode,
        mc_std_error=se,
        m=EP.m,
        n=Pf.n,
        config=cfg,
        degenerate=degenerate,
    )

"""Comparison of crisp and fuzzy partitions.

Pair-counting indices for hard partitions, the normalized degree of
concordance (NDC) for fuzzy partitions, and the adjusted concordance index
(ACI), which corrects NDC for agreement expected under a permutation null.
"""

__version__ = "0.1.0"

from .partitions import (  # noqa: E402
    CrispPartition,
    EquivalenceMatrix,
    FuzzyPartition,
    equivalence_matrix,
    from_labels,
    pair_from_index,
    pair_index,
)
from .crisp import (  # noqa: E402
    ContingencyTable,
    PairCounts,
    UndefinedIndexError,
    ari_cardinals,
    ari_contingency,
    contingency_table,
    pair_counts,
    rand_index,
    related_indices,
)
from .expectation import (  # noqa: E402
    ExpectationConfig,
    expected_ndc,
    expected_ndc_closed_form,
    expected_ndc_enumeration,
    expected_ndc_monte_carlo,
)
from .fuzzy import (  # noqa: E402
    ComparisonResult,
    PairCardinals,
    aci,
    cardinal_indices,
    concordance_degree,
    discordance_degree,
    fuzzy_cardinals,
    fuzzy_distance,
    ndc,
)
from .clustering import (  # noqa: E402
    ClusteringConfig,
    Dataset,
    fcm,
    kmeans,
    pd_cluster,
    pd_membership,
    true_fuzzy_partition,
)

"""
Comparing two small partitions
==============================

Four objects, two clusters. We build the pairwise equivalence matrices,
score their agreement with the NDC and correct it for chance.
"""

import numpy as np

from concord import FuzzyPartition, aci, equivalence_matrix, from_labels, pair_counts

# %%
# Crisp case: the NDC is the Rand index and the ACI is the adjusted Rand index.
P = from_labels([0, 0, 1, 0])
Q = from_labels([0, 1, 1, 0])
print("pair counts", pair_counts(P.to_crisp(), Q.to_crisp()).as_tuple())
r = aci(P, Q)
print(f"NDC={r.ndc:.4f}  expected={r.expected_ndc:.4f}  ACI={r.aci:.4f}")

# %%
# Fuzzy case. Each row holds one object's memberships.
P = FuzzyPartition([[0.29, 0.71], [0.79, 0.21], [0.41, 0.59], [0.88, 0.12]])
Q = FuzzyPartition([[0.94, 0.06], [0.05, 0.95], [0.53, 0.47], [0.89, 0.11]])
np.set_printoptions(precision=2, suppress=True)
print(equivalence_matrix(P).dense)
print(equivalence_matrix(Q).dense)

# %%
# The raw agreement looks moderate, but chance alone would give more.
r = aci(P, Q)
print(f"NDC={r.ndc:.4f}  expected={r.expected_ndc:.4f}  ACI={r.aci:.4f}  clamped={r.aci_clamped:.1f}")
a, b, c, d = r.cardinals.as_tuple()
print(f"fuzzy cardinals a={a:.3f} b={b:.3f} c={c:.3f} d={d:.3f}")

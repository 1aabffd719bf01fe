import os
from pathlib import Path

import numpy as np
import pytest

from concord import FuzzyPartition

# small fuzzy example: two partitions of four objects
P_PRIME = [[0.29, 0.71], [0.79, 0.21], [0.41, 0.59], [0.88, 0.12]]
Q_PRIME = [[0.94, 0.06], [0.05, 0.95], [0.53, 0.47], [0.89, 0.11]]

# reference equivalence matrices for the same example, to two decimals
E_P_PRIME = [
    [1.00, 0.50, 0.88, 0.41],
    [0.50, 1.00, 0.62, 0.91],
    [0.88, 0.62, 1.00, 0.53],
    [0.41, 0.91, 0.53, 1.00],
]
E_Q_PRIME = [
    [1.00, 0.11, 0.59, 0.95],
    [0.11, 1.00, 0.52, 0.16],
    [0.59, 0.52, 1.00, 0.64],
    [0.95, 0.16, 0.64, 1.00],
]

CRISP_P = [0, 0, 1, 0]
CRISP_Q = [0, 1, 1, 0]


@pytest.fixture
def fuzzy_toy():
    return FuzzyPartition(P_PRIME), FuzzyPartition(Q_PRIME)


def random_fuzzy(rng, n, k, concentration=1.0):
    return FuzzyPartition(rng.dirichlet(np.full(k, concentration), size=n))


def random_labels(rng, n, k):
    return rng.integers(0, k, size=n)


def _write_iris(path: Path) -> Path:
    datasets = pytest.importorskip("sklearn.datasets")
    iris = datasets.load_iris()
    names = ["sepal_length", "sepal_width", "petal_length", "petal_width", "species"]
    with open(path, "w") as fh:
        fh.write(",".join(names) + "\n")
        for row, t in zip(iris.data, iris.target):
            fh.write(",".join(f"{v:g}" for v in row) + f",{iris.target_names[t]}\n")
    return path


@pytest.fixture(scope="session")
def iris_csv(tmp_path_factory):
    """Iris as a labeled CSV.

    Uses ``$CONCORD_IRIS_CSV`` when set; otherwise writes the copy bundled
    with scikit-learn, and skips when neither is available.
    """
    env = os.environ.get("CONCORD_IRIS_CSV")
    if env:
        if not Path(env).exists():
            pytest.skip(f"CONCORD_IRIS_CSV={env} does not exist")
        return Path(env)
    return _write_iris(tmp_path_factory.mktemp("data") / "iris.csv")

"""CSV input and output for partitions and labeled datasets.

Membership files hold one row per object and one numeric column per cluster,
with an optional header row. Label files hold a single column of integer or
string class names. Numbers are written with 17 significant digits so a
write/read cycle is lossless.
"""

from __future__ import annotations

import csv
import logging
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .clustering import Dataset
from .partitions import CrispPartition, FuzzyPartition

__all__ = [
    "CSVFormatError",
    "LabeledDataset",
    "read_membership_csv",
    "read_labels_csv",
    "read_partition",
    "read_labeled_csv",
    "read_dataset_csv",
    "write_membership_csv",
    "write_labels_csv",
]

log = logging.getLogger(__name__)


class CSVFormatError(ValueError):
    """Malformed input file; the message names the offending location."""


def _read_rows(path, delimiter: str) -> list[list[str]]:
    with open(path, newline="") as fh:
        rows = [[c.strip() for c in row] for row in csv.reader(fh, delimiter=delimiter)]
    rows = [r for r in rows if any(c for c in r)]
    if not rows:
        raise CSVFormatError(f"{path}: file is empty")
    return rows


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def _split_header(rows: list[list[str]], header: bool | None) -> tuple[list[str] | None, list[list[str]]]:
    if header is None:
        header = not all(_is_number(c) for c in rows[0])
    if header:
        return rows[0], rows[1:]
    return None, rows


def _numeric_matrix(rows: list[list[str]], path, first_line: int) -> np.ndarray:
    width = len(rows[0])
    out = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        line = first_line + i
        if len(row) != width:
            raise CSVFormatError(f"{path}: line {line} has {len(row)} fields, expected {width}")
        for j, cell in enumerate(row):
            try:
                out[i, j] = float(cell)
            except ValueError:
                raise CSVFormatError(f"{path}: line {line}, column {j + 1}: {cell!r} is not a number") from None
    return out


def read_membership_csv(
    path,
    delimiter: str = ",",
    header: bool | None = None,
    renormalize: bool = False,
) -> FuzzyPartition:
    """Read an ``n x K`` membership matrix.

    ``header=None`` treats the first row as a header when any of its cells
    is non-numeric. Rows must sum to 1 unless ``renormalize`` is set.
    """
    head, body = _split_header(_read_rows(path, delimiter), header)
    first_line = 2 if head is not None else 1
    if not body:
        raise CSVFormatError(f"{path}: no data rows")
    w = _numeric_matrix(body, path, first_line)
    sums = w.sum(axis=1)
    if not renormalize:
        bad = np.flatnonzero(np.abs(sums - 1.0) > 1e-9)
        if bad.size:
            i = int(bad[0])
            raise CSVFormatError(
                f"{path}: row {i} (line {first_line + i}) sums to {sums[i]:.17g}, not 1; "
                "pass renormalize=True to rescale rows"
            )
    try:
        return FuzzyPartition(w, renormalize=renormalize)
    except ValueError as exc:
        raise CSVFormatError(f"{path}: {exc}") from None


def _encode_labels(values: Sequence[str]) -> tuple[np.ndarray, list[str]]:
    """Map distinct values to 0..K-1 in sorted order (numeric order for numbers)."""
    distinct = set(values)
    if all(_is_number(v) for v in distinct):
        names = sorted(distinct, key=float)
    else:
        names = sorted(distinct)
    lookup = {v: i for i, v in enumerate(names)}
    return np.array([lookup[v] for v in values], dtype=np.int64), names


def read_labels_csv(path, delimiter: str = ",", header: bool | None = None) -> CrispPartition:
    """Read a single column of class labels.

    Header detection treats a non-integer first cell as a header only when
    the remaining cells are all integers; string labels need ``header=True``
    if the file has a header.
    """
    rows = _read_rows(path, delimiter)
    for i, row in enumerate(rows):
        if len(row) != 1:
            raise CSVFormatError(f"{path}: line {i + 1} has {len(row)} fields, a label file has one")
    cells = [r[0] for r in rows]
    if header is None:
        header = not _is_int(cells[0]) and len(cells) > 1 and all(_is_int(c) for c in cells[1:])
    if header:
        cells = cells[1:]
    if not cells:
        raise CSVFormatError(f"{path}: no labels")
    codes, _ = _encode_labels(cells)
    return CrispPartition(codes)


def _is_int(s: str) -> bool:
    try:
        int(s)
    except ValueError:
        return False
    return True


def _looks_like_labels(rows: list[list[str]]) -> bool:
    if any(len(r) != 1 for r in rows):
        return False
    cells = [r[0] for r in rows]
    body = cells[1:] if cells and not _is_number(cells[0]) else cells
    if all(_is_int(c) for c in body):
        return True
    # a single column of names cannot be a membership matrix
    return not all(_is_number(c) for c in body)


def read_partition(
    path,
    fmt: str = "auto",
    delimiter: str = ",",
    renormalize: bool = False,
) -> FuzzyPartition | CrispPartition:
    """Read either a label file or a membership file.

    With ``fmt="auto"`` a one-column file of integers (or names) is read as
    labels and anything else as a membership matrix.
    """
    if fmt == "auto":
        fmt = "labels" if _looks_like_labels(_read_rows(path, delimiter)) else "membership"
    if fmt == "labels":
        return read_labels_csv(path, delimiter=delimiter)
    if fmt == "membership":
        return read_membership_csv(path, delimiter=delimiter, renormalize=renormalize)
    raise ValueError(f"unknown format {fmt!r}; use 'auto', 'labels' or 'membership'")


@dataclass(frozen=True)
class LabeledDataset:
    data: Dataset
    labels: CrispPartition | None
    feature_names: list[str]
    dropped: list[str]
    class_names: list[str]


def _column_position(label_column, names: list[str] | None, width: int, path) -> int:
    if isinstance(label_column, int):
        pos = label_column if label_column >= 0 else width + label_column
        if not 0 <= pos < width:
            raise CSVFormatError(f"{path}: label column {label_column} out of range for {width} columns")
        return pos
    if names is None:
        if not _is_int(str(label_column)):
            raise CSVFormatError(f"{path}: no header, so label column must be an index")
        return _column_position(int(label_column), None, width, path)
    if label_column in names:
        return names.index(label_column)
    if _is_int(str(label_column)):
        return _column_position(int(label_column), names, width, path)
    raise CSVFormatError(f"{path}: no column named {label_column!r}")


def read_labeled_csv(
    path,
    label_column: int | str | None = -1,
    delimiter: str = ",",
    header: bool | None = None,
) -> LabeledDataset:
    """Read numeric features and, optionally, a label column.

    Columns with any non-numeric cell are dropped (logged at INFO).
    ``label_column=None`` reads an unlabeled dataset.
    """
    rows = _read_rows(path, delimiter)
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise CSVFormatError(f"{path}: line {i + 1} has {len(row)} fields, expected {width}")
    if header is None:
        named = isinstance(label_column, str) and not _is_int(label_column)
        # header when row 0 has a non-number where row 1 has a number
        header = named or (
            len(rows) > 1 and any(not _is_number(a) and _is_number(b) for a, b in zip(rows[0], rows[1]))
        )
    names = rows[0] if header else None
    body = rows[1:] if header else rows
    if len(body) < 2:
        raise CSVFormatError(f"{path}: need at least 2 data rows")
    if names is None:
        names = [f"x{j}" for j in range(width)]
        label_pos = None if label_column is None else _column_position(label_column, None, width, path)
    else:
        label_pos = None if label_column is None else _column_position(label_column, names, width, path)
    features, dropped = [], []
    for j in range(width):
        if j == label_pos:
            continue
        if all(_is_number(r[j]) for r in body):
            features.append(j)
        else:
            dropped.append(names[j])
    if dropped:
        log.info("%s: dropped non-numeric columns %s", path, ", ".join(dropped))
    if not features:
        raise CSVFormatError(f"{path}: no numeric features")
    x = np.array([[float(r[j]) for j in features] for r in body])
    labels, class_names = None, []
    if label_pos is not None:
        codes, class_names = _encode_labels([r[label_pos] for r in body])
        labels = CrispPartition(codes)
    return LabeledDataset(Dataset(x), labels, [names[j] for j in features], dropped, class_names)


def read_dataset_csv(path, delimiter: str = ",", header: bool | None = None) -> LabeledDataset:
    """Numeric features only; non-numeric columns (e.g. a class column) are dropped."""
    return read_labeled_csv(path, label_column=None, delimiter=delimiter, header=header)


@contextmanager
def _sink(target):
    if hasattr(target, "write"):
        yield target
    else:
        with open(target, "w", newline="") as fh:
            yield fh


def write_membership_csv(target, P: FuzzyPartition, header: bool = True) -> None:
    """Write memberships to a path or open text file."""
    w = P.memberships
    with _sink(target) as fh:
        out = csv.writer(fh, lineterminator="\n")
        if header:
            out.writerow([f"cluster_{k}" for k in range(w.shape[1])])
        for row in w:
            out.writerow([f"{v:.17g}" for v in row])


def write_labels_csv(target, labels: CrispPartition | Sequence[int], header: bool = False) -> None:
    lab = labels.labels if isinstance(labels, CrispPartition) else np.asarray(labels)
    with _sink(target) as fh:
        out = csv.writer(fh, lineterminator="\n")
        if header:
            out.writerow(["label"])
        for v in lab:
            out.writerow([int(v)])

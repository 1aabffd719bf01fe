import io
import json

import numpy as np
import pytest

from concord import CrispPartition, FuzzyPartition
from concord.cli import EXIT_INPUT, EXIT_NOT_CONVERGED, EXIT_NUMERIC, EXIT_OK, main
from concord.io import (
    CSVFormatError,
    read_dataset_csv,
    read_labeled_csv,
    read_labels_csv,
    read_membership_csv,
    read_partition,
    write_labels_csv,
    write_membership_csv,
)

from conftest import CRISP_P, CRISP_Q, P_PRIME, Q_PRIME


def _write(path, text):
    path.write_text(text)
    return path


@pytest.fixture
def toy_files(tmp_path):
    p = tmp_path / "p.csv"
    q = tmp_path / "q.csv"
    write_membership_csv(p, FuzzyPartition(P_PRIME))
    write_membership_csv(q, FuzzyPartition(Q_PRIME))
    return p, q


@pytest.fixture
def blobs_csv(tmp_path):
    rng = np.random.default_rng(0)
    x = np.vstack([rng.normal(c, 0.3, size=(20, 2)) for c in ((0, 0), (5, 5))])
    lines = ["x,y,cls"] + [f"{a:.6f},{b:.6f},{'ab'[i // 20]}" for i, (a, b) in enumerate(x)]
    return _write(tmp_path / "blobs.csv", "\n".join(lines) + "\n")


# ---------------------------------------------------------------- io


def test_membership_round_trip(tmp_path):
    rng = np.random.default_rng(1)
    P = FuzzyPartition(rng.dirichlet(np.ones(3), size=25))
    path = tmp_path / "m.csv"
    write_membership_csv(path, P)
    assert path.read_text().splitlines()[0] == "cluster_0,cluster_1,cluster_2"
    np.testing.assert_array_equal(read_membership_csv(path).memberships, P.memberships)


def test_membership_without_header(tmp_path):
    path = _write(tmp_path / "m.csv", "0.25,0.75\n1,0\n")
    np.testing.assert_array_equal(read_membership_csv(path).memberships, [[0.25, 0.75], [1, 0]])


def test_membership_row_sum_error_names_row(tmp_path):
    path = _write(tmp_path / "m.csv", "a,b\n0.5,0.5\n0.6,0.6\n")
    with pytest.raises(CSVFormatError, match=r"row 1 \(line 3\)"):
        read_membership_csv(path)
    np.testing.assert_allclose(read_membership_csv(path, renormalize=True).memberships[1], [0.5, 0.5])


def test_membership_bad_cell(tmp_path):
    path = _write(tmp_path / "m.csv", "0.5,0.5\n0.5,x\n")
    with pytest.raises(CSVFormatError, match="line 2, column 2"):
        read_membership_csv(path)


def test_membership_ragged(tmp_path):
    path = _write(tmp_path / "m.csv", "0.5,0.5\n1\n")
    with pytest.raises(CSVFormatError, match="line 2"):
        read_membership_csv(path)


def test_empty_file(tmp_path):
    with pytest.raises(CSVFormatError, match="empty"):
        read_membership_csv(_write(tmp_path / "e.csv", ""))


def test_labels_round_trip(tmp_path):
    path = tmp_path / "l.csv"
    write_labels_csv(path, CrispPartition([2, 0, 1, 1]))
    assert read_labels_csv(path) == CrispPartition([2, 0, 1, 1])


def test_string_labels_encoded_in_sorted_order(tmp_path):
    path = _write(tmp_path / "l.csv", "b\na\nb\nc\n")
    np.testing.assert_array_equal(read_labels_csv(path).labels, [1, 0, 1, 2])


def test_label_header_detected(tmp_path):
    path = _write(tmp_path / "l.csv", "label\n3\n1\n3\n")
    np.testing.assert_array_equal(read_labels_csv(path).labels, [1, 0, 1])


def test_read_partition_auto(tmp_path, toy_files):
    labels = _write(tmp_path / "l.csv", "0\n0\n1\n0\n")
    assert isinstance(read_partition(labels), CrispPartition)
    assert isinstance(read_partition(toy_files[0]), FuzzyPartition)
    with pytest.raises(ValueError):
        read_partition(labels, fmt="xml")


def test_labeled_csv(blobs_csv):
    ds = read_labeled_csv(blobs_csv, label_column="cls")
    assert ds.feature_names == ["x", "y"]
    assert ds.class_names == ["a", "b"]
    assert ds.labels.k == 2 and ds.data.n == 40


def test_labeled_csv_by_index(blobs_csv):
    assert read_labeled_csv(blobs_csv, label_column=-1).class_names == ["a", "b"]
    with pytest.raises(CSVFormatError, match="out of range"):
        read_labeled_csv(blobs_csv, label_column=7)
    with pytest.raises(CSVFormatError, match="no column named"):
        read_labeled_csv(blobs_csv, label_column="species")


def test_dataset_csv_drops_text_columns(blobs_csv):
    ds = read_dataset_csv(blobs_csv)
    assert ds.dropped == ["cls"] and ds.data.p == 2


def test_dataset_without_numeric_columns(tmp_path):
    with pytest.raises(CSVFormatError, match="no numeric features"):
        read_dataset_csv(_write(tmp_path / "t.csv", "a\nb\nc\n"))


def test_write_to_stream():
    buf = io.StringIO()
    write_membership_csv(buf, FuzzyPartition([[0.1, 0.9], [1.0, 0.0]]), header=False)
    assert buf.getvalue() == "0.10000000000000001,0.90000000000000002\n1,0\n"


# ---------------------------------------------------------------- cli


def test_compare_text(toy_files, capsys):
    assert main(["compare", *map(str, toy_files)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "ndc              0.6367" in out
    assert "expected_ndc     0.6972" in out
    assert "aci              -0.2000" in out


def test_compare_json_enumeration(toy_files, capsys):
    assert main(["compare", *map(str, toy_files), "--expect", "enum", "--json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["expected_ndc"] == pytest.approx(0.6972, abs=5e-4)
    assert report["config"]["mode"] == "enumeration"
    assert "crisp" not in report


def test_compare_clamp(toy_files, capsys):
    main(["compare", *map(str, toy_files), "--clamp"])
    assert "aci              0.0000 (clamped)" in capsys.readouterr().out


def test_compare_crisp_block(tmp_path, capsys):
    p = tmp_path / "p.csv"
    q = tmp_path / "q.csv"
    write_labels_csv(p, CRISP_P)
    write_labels_csv(q, CRISP_Q)
    assert main(["compare", str(p), str(q), "--json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["crisp"]["pair_counts"] == {"a": 1, "b": 2, "c": 1, "d": 2}
    assert report["crisp"]["ri"] == 0.5 and report["crisp"]["ari"] == 0.0
    assert report["ndc"] == 0.5 and report["aci"] == 0.0


def test_compare_monte_carlo_reproducible(toy_files, capsys):
    args = ["compare", *map(str, toy_files), "--expect", "mc", "--h", "500", "--seed", "3", "--json"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first
    assert json.loads(first)["mc_std_error"] > 0


def test_compare_missing_file(tmp_path, capsys):
    assert main(["compare", str(tmp_path / "nope.csv"), str(tmp_path / "nope.csv")]) == EXIT_INPUT
    assert "error:" in capsys.readouterr().err


def test_compare_row_sum_error(tmp_path, toy_files, capsys):
    bad = _write(tmp_path / "bad.csv", "0.5,0.5\n0.5,0.4\n0.5,0.5\n0.5,0.5\n")
    assert main(["compare", str(bad), str(toy_files[0])]) == EXIT_INPUT
    assert "row 1" in capsys.readouterr().err


def test_compare_size_mismatch(tmp_path, toy_files):
    short = _write(tmp_path / "s.csv", "0\n1\n")
    assert main(["compare", str(short), str(toy_files[0])]) == EXIT_NUMERIC


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["compare"])
    assert exc.value.code == 2


@pytest.mark.parametrize("algorithm", ["fcm", "pd", "kmeans"])
def test_cluster(algorithm, blobs_csv, tmp_path):
    out = tmp_path / f"{algorithm}.csv"
    assert main(["cluster", algorithm, str(blobs_csv), "--k", "2", "--out", str(out)]) == EXIT_OK
    meta = json.loads((tmp_path / f"{algorithm}.csv.json").read_text())
    assert meta["status"] == "ok" and meta["dropped_columns"] == ["cls"]
    P = read_partition(out)
    assert P.n == 40


def test_cluster_deterministic_bytes(blobs_csv, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["cluster", "fcm", str(blobs_csv), "--k", "2", "--seed", "4", "--out", str(a)])
    main(["cluster", "fcm", str(blobs_csv), "--k", "2", "--seed", "4", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_cluster_not_converged(blobs_csv, tmp_path, capsys):
    out = tmp_path / "o.csv"
    code = main(["cluster", "fcm", str(blobs_csv), "--k", "2", "--max-iter", "1", "--n-init", "1", "--out", str(out)])
    assert code == EXIT_NOT_CONVERGED
    assert json.loads((tmp_path / "o.csv.json").read_text())["status"] == "not_converged"
    assert out.exists()


def test_cluster_bad_k(blobs_csv, tmp_path):
    assert main(["cluster", "fcm", str(blobs_csv), "--k", "100", "--out", str(tmp_path / "o.csv")]) == EXIT_NUMERIC


def test_truth_to_stdout(blobs_csv, capsys):
    assert main(["truth", str(blobs_csv), "--label-column", "cls"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "cluster_0,cluster_1" and len(lines) == 41


def test_truth_then_compare(blobs_csv, tmp_path, capsys):
    truth, est = tmp_path / "t.csv", tmp_path / "e.csv"
    main(["truth", str(blobs_csv), "--out", str(truth)])
    main(["cluster", "pd", str(blobs_csv), "--k", "2", "--out", str(est)])
    capsys.readouterr()
    main(["compare", str(truth), str(est), "--json"])
    assert json.loads(capsys.readouterr().out)["aci"] > 0.9


def test_simulate_study1(tmp_path, capsys):
    out = tmp_path / "s1"
    assert main(["simulate", "study1", "--out", str(out), "--seed", "2"]) == EXIT_OK
    assert {p.name for p in out.iterdir()} == {"study1.csv", "study1.json", "study1.txt"}
    assert "2 Centers, Sigma1" in capsys.readouterr().out


def test_simulate_bias(tmp_path, capsys):
    out = tmp_path / "b"
    code = main(["simulate", "bias", "--out", str(out), "--n-datasets", "3", "--n-min", "50", "--n-max", "60"])
    assert code == EXIT_OK
    meta = json.loads((out / "bias.json").read_text())
    assert abs(meta["mean_diff"]) < 1e-10
    assert "mean(ACI - ARI)" in capsys.readouterr().out


def test_simulate_study3_with_data(blobs_csv, tmp_path):
    out = tmp_path / "s3"
    assert main(["simulate", "study3", "--out", str(out), "--data", str(blobs_csv), "--label-column", "cls"]) == EXIT_OK
    text = (out / "study3.csv").read_text()
    assert "blobs,true_vs_true,ACI,1" in text


def test_simulate_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["simulate", "study1", "--out", str(a), "--seed", "5"])
    main(["simulate", "study1", "--out", str(b), "--seed", "5"])
    assert (a / "study1.csv").read_bytes() == (b / "study1.csv").read_bytes()

"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line (visible in
``pytest -v`` output) before asserting, so a run doubles as a report.
"""

import time
import warnings

import numpy as np
import pytest

from concord import (
    ExpectationConfig,
    FuzzyPartition,
    aci,
    ari_cardinals,
    equivalence_matrix,
    expected_ndc_closed_form,
    expected_ndc_enumeration,
    expected_ndc_monte_carlo,
    from_labels,
    fuzzy_cardinals,
    fuzzy_distance,
    ndc,
    pair_counts,
    rand_index,
)
from concord.clustering import ConvergenceWarning
from concord.io import read_labeled_csv
from concord.simulation import STUDY1_SPREADS, bias_experiment, study1, study2, study3

from conftest import CRISP_P, CRISP_Q, E_P_PRIME, E_Q_PRIME, P_PRIME, Q_PRIME, random_fuzzy, random_labels


@pytest.fixture(autouse=True)
def _quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        yield


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def test_criterion_01_crisp_toy(report):
    pc = pair_counts(CRISP_P, CRISP_Q)
    r = aci(from_labels(CRISP_P), from_labels(CRISP_Q))
    cards = fuzzy_cardinals(equivalence_matrix(from_labels(CRISP_P)), equivalence_matrix(from_labels(CRISP_Q)))
    ok = (
        pc.as_tuple() == (1, 2, 1, 2)
        and rand_index(pc) == 0.5
        and ari_cardinals(pc) == 0.0
        and r.ndc == rand_index(pc)
        and cards.as_tuple() == (1.0, 2.0, 1.0, 2.0)
    )
    report(1, ok, f"counts={pc.as_tuple()} RI={rand_index(pc)} ARI={ari_cardinals(pc)} NDC={r.ndc} cardinals={cards.as_tuple()}")


def test_criterion_02_fuzzy_toy(report):
    P, Q = FuzzyPartition(P_PRIME), FuzzyPartition(Q_PRIME)
    EP, EQ = equivalence_matrix(P), equivalence_matrix(Q)
    e_err = max(np.abs(EP.dense - E_P_PRIME).max(), np.abs(EQ.dense - E_Q_PRIME).max())
    value = ndc(EP, EQ)
    closed = expected_ndc_closed_form(EP.upper_tri, EQ.upper_tri)
    enum = expected_ndc_enumeration(EP.upper_tri, EQ.upper_tri)
    r = aci(P, Q, ExpectationConfig("enumeration"))
    ok = (
        e_err <= 5e-3
        and abs(value - 0.6367) <= 5e-3
        and abs(closed - 0.6972) <= 5e-3
        and abs(enum - 0.6972) <= 5e-3
        and abs(r.aci + 0.200) <= 5e-3
        and abs(enum - closed) <= 1e-12
    )
    report(
        2,
        ok,
        f"max|E-ref|={e_err:.4f} NDC={value:.4f} E[NDC] enum={enum:.4f} closed={closed:.4f} "
        f"|diff|={abs(enum - closed):.1e} ACI={r.aci:.4f}",
    )


def test_criterion_03_expectation_oracles(report):
    start = time.perf_counter()
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(50):
        m = int(rng.integers(1, 8))
        p, q = rng.random(m), rng.random(m)
        worst = max(worst, abs(expected_ndc_closed_form(p, q) - expected_ndc_enumeration(p, q)))
    hits = 0
    for trial in range(200):
        p, q = rng.random(45), rng.beta(0.5, 2.0, size=45)
        est, se = expected_ndc_monte_carlo(p, q, h=2000, seed=trial)
        hits += abs(est - expected_ndc_closed_form(p, q)) <= 4 * se
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and hits >= 198 and elapsed < 10
    report(3, ok, f"max|closed-enum|={worst:.1e} MC within 4 SE: {hits}/200 time={elapsed:.1f}s")


@pytest.mark.slow
def test_criterion_04_crisp_aci_is_ari(report):
    start = time.perf_counter()
    rng = np.random.default_rng(4)
    worst = 0.0
    checked = 0
    while checked < 100:
        n = int(rng.integers(2, 101))
        p = random_labels(rng, n, int(rng.integers(1, 11)))
        q = random_labels(rng, n, int(rng.integers(1, 11)))
        pc = pair_counts(p, q)
        try:
            ari = ari_cardinals(pc)
        except ArithmeticError:
            continue
        r = aci(from_labels(p), from_labels(q))
        if r.degenerate:
            continue
        worst = max(worst, abs(r.aci - ari))
        checked += 1
    bias = bias_experiment(100, seed=0, expectation=ExpectationConfig("mc", h=1000), n_range=(100, 400))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-10 and abs(bias.mean_diff) <= 0.01 and elapsed < 120
    report(4, ok, f"max|ACI-ARI|={worst:.1e} over 100 pairs; MC bias mean={bias.mean_diff:.2e} time={elapsed:.1f}s")


def test_criterion_05_reflexivity(report):
    start = time.perf_counter()
    rng = np.random.default_rng(5)
    bad = 0
    for _ in range(100):
        P = random_fuzzy(rng, int(rng.integers(2, 60)), int(rng.integers(1, 6)), 0.5)
        r = aci(P, P)
        bad += r.ndc != 1.0 or (not r.degenerate and r.aci != 1.0)
    s2 = study2(0)
    diag_ok = all(np.array_equal(np.diag(s2.matrix(i)[2]), np.ones(7)) for i in ("NDC", "ACI"))
    s3 = study3(0)
    tt = [s3.value(d, i, "true_vs_true") for d in s3.designs() for i in ("NDC", "ACI")]
    elapsed = time.perf_counter() - start
    ok = bad == 0 and diag_ok and all(v == 1.0 for v in tt) and elapsed < 30
    report(5, ok, f"self-comparisons off 1: {bad}/100; study2 unit diagonals: {diag_ok}; study3 true-vs-true all 1: {all(v == 1.0 for v in tt)} time={elapsed:.1f}s")


def test_criterion_06_chance_null(report):
    rng = np.random.default_rng(6)
    values = [aci(random_fuzzy(rng, 60, 3), random_fuzzy(rng, 60, 3)).aci for _ in range(50)]
    mean = float(np.mean(values))
    report(6, -0.02 <= mean <= 0.02, f"mean ACI over 50 independent pairs = {mean:.4f}")


def test_criterion_07_study1_pattern(report):
    start = time.perf_counter()
    runs = [study1(seed) for seed in range(10)]
    first = runs[0]
    top_ndc, top_aci = first.value("2 Centers, Sigma1", "NDC"), first.value("2 Centers, Sigma1", "ACI")
    monotone = True
    medians = {}
    for C in (2, 3, 4):
        med = [
            float(np.median([r.value(f"{C} Centers, Sigma{i}", "NDC") for r in runs]))
            for i in range(1, len(STUDY1_SPREADS) + 1)
        ]
        medians[C] = [round(v, 4) for v in med]
        monotone &= all(a >= b for a, b in zip(med, med[1:]))
    elapsed = time.perf_counter() - start
    ok = top_ndc >= 0.99 and top_aci >= 0.99 and monotone and elapsed < 120
    report(7, ok, f"2 Centers Sigma1 NDC={top_ndc:.4f} ACI={top_aci:.4f}; median NDC by spread {medians} time={elapsed:.1f}s")


def test_criterion_08_study2_pattern(report):
    start = time.perf_counter()
    res = study2(0)
    _, cols, M = res.matrix("ACI")
    diag_max = bool(np.all(np.argmax(M, axis=1) == np.arange(M.shape[0])))
    n8, a8 = res.value("Data set 1", "NDC", "C=8"), res.value("Data set 1", "ACI", "C=8")
    elapsed = time.perf_counter() - start
    ok = diag_max and a8 <= n8 - 0.15 and elapsed < 180
    report(8, ok, f"rows maximized on diagonal: {diag_max}; data set 1 at C=8 NDC={n8:.4f} ACI={a8:.4f} time={elapsed:.1f}s")


def test_criterion_09_true_fuzzy_partition(report, request):
    start = time.perf_counter()
    null = study3(0)
    overlap = [null.value(f"Random {C} Centers", "ACI", "true_vs_estimated") for C in (2, 3, 4)]
    overlap_ok = all(-0.05 <= v <= 0.15 for v in overlap)
    try:
        path = request.getfixturevalue("iris_csv")
    except pytest.skip.Exception:
        path = None
    if path is None:
        report(9, overlap_ok, f"overlap-null ACI {[round(v, 4) for v in overlap]}; Iris CSV unavailable, Iris part skipped")
        pytest.skip("Iris CSV unavailable")
    ds = read_labeled_csv(path, label_column=-1)
    iris = study3(0, datasets=[("Iris", ds.data, ds.labels)])
    n_iris = iris.value("Iris", "NDC", "true_vs_estimated")
    a_iris = iris.value("Iris", "ACI", "true_vs_estimated")
    elapsed = time.perf_counter() - start
    ok = 0.95 <= n_iris <= 1.0 and a_iris >= 0.85 and overlap_ok and elapsed < 60
    report(
        9,
        ok,
        f"Iris NDC={n_iris:.4f} ACI={a_iris:.4f}; overlap-null ACI {[round(v, 4) for v in overlap]} time={elapsed:.1f}s",
    )


def test_criterion_10_performance(report):
    rng = np.random.default_rng(10)
    P, Q = random_fuzzy(rng, 500, 4), random_fuzzy(rng, 500, 4)
    t0 = time.perf_counter()
    closed = aci(P, Q)
    t1 = time.perf_counter()
    mc = aci(P, Q, ExpectationConfig("mc", h=1000, seed=0))
    t2 = time.perf_counter()
    ok = closed.m == 124_750 and t1 - t0 < 2 and t2 - t1 < 10
    report(10, ok, f"m={closed.m} closed form {t1 - t0:.2f}s; Monte Carlo h=1000 {t2 - t1:.2f}s")


def test_criterion_11_pseudometric(report):
    rng = np.random.default_rng(11)
    worst_sym = 0.0
    worst_tri = -np.inf
    for _ in range(100):
        n = int(rng.integers(2, 16))
        A, B, C = (equivalence_matrix(random_fuzzy(rng, n, int(rng.integers(1, 5)), 0.5)) for _ in range(3))
        worst_sym = max(worst_sym, abs(fuzzy_distance(A, B) - fuzzy_distance(B, A)))
        worst_tri = max(worst_tri, fuzzy_distance(A, C) - fuzzy_distance(A, B) - fuzzy_distance(B, C))
    ok = worst_sym <= 1e-12 and worst_tri <= 1e-12
    report(11, ok, f"max asymmetry={worst_sym:.1e}; max triangle excess={worst_tri:.2e}")

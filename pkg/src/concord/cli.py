"""Command-line front end.

    concord compare A.csv B.csv [--expect closed|enum|mc] [--h H] [--seed S] [--json]
    concord cluster {fcm,pd,kmeans} DATA.csv --k K --out OUT.csv
    concord truth DATA.csv --out OUT.csv
    concord simulate {study1,study2,study3,bias} --out DIR

Exit status: 0 success, 2 usage error, 3 unreadable or malformed input,
4 numerical failure, 5 finished but a clustering run did not converge.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path

from . import __version__
from .clustering import ClusteringConfig, ConvergenceWarning, fcm, kmeans, pd_cluster, true_fuzzy_partition
from .crisp import UndefinedIndexError, ari_cardinals, pair_counts, rand_index, related_indices
from .expectation import ExpectationConfig
from .fuzzy import aci
from .io import (
    CSVFormatError,
    read_dataset_csv,
    read_labeled_csv,
    read_partition,
    write_labels_csv,
    write_membership_csv,
)
from .partitions import as_fuzzy

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERIC = 4
EXIT_NOT_CONVERGED = 5

_EXPECT = {"closed": "closed_form", "enum": "enumeration", "mc": "monte_carlo"}

log = logging.getLogger("concord")


def _label_column(value: str):
    try:
        return int(value)
    except ValueError:
        return value


def _expectation(args) -> ExpectationConfig:
    return ExpectationConfig(mode=_EXPECT[args.expect], h=args.h, seed=args.seed)


def _dump(obj, fh) -> None:
    json.dump(obj, fh, indent=2, sort_keys=True, allow_nan=True)
    fh.write("\n")


# ------------------------------------------------------------------- compare


def cmd_compare(args) -> int:
    P = read_partition(args.first, fmt=args.format, delimiter=args.delimiter, renormalize=args.renormalize)
    Q = read_partition(args.second, fmt=args.format, delimiter=args.delimiter, renormalize=args.renormalize)
    cfg = _expectation(args)
    result = aci(P, Q, cfg)
    report = {"version": __version__, **result.as_dict()}
    report["config"]["clamp"] = args.clamp
    report["inputs"] = {"first": str(args.first), "second": str(args.second), "format": args.format}
    Pf, Qf = as_fuzzy(P), as_fuzzy(Q)
    if Pf.is_crisp and Qf.is_crisp:
        pc = pair_counts(Pf.to_crisp(), Qf.to_crisp())
        report["crisp"] = {
            "pair_counts": dict(zip("abcd", pc.as_tuple())),
            "ri": rand_index(pc),
            "ari": ari_cardinals(pc),
            **related_indices(pc),
        }
    if args.json:
        _dump(report, sys.stdout)
        return EXIT_OK
    headline = result.aci_clamped if args.clamp else result.aci
    lines = [
        f"n                {result.n}",
        f"pairs            {result.m}",
        f"expectation      {cfg.mode}" + (f" (h={cfg.h}, seed={cfg.seed})" if cfg.mode == "monte_carlo" else ""),
        f"ndc              {result.ndc:.4f}",
        f"expected_ndc     {result.expected_ndc:.4f}"
        + (f" +/- {result.mc_std_error:.4f}" if result.mc_std_error is not None else ""),
        f"aci              {headline:.4f}" + (" (clamped)" if args.clamp else ""),
        f"aci_raw          {result.aci:.4f}",
        f"aci_clamped      {result.aci_clamped:.4f}",
    ]
    if result.degenerate:
        lines.append("note             expected NDC is 1; ACI undefined, reported as 0")
    a, b, c, d = result.cardinals.as_tuple()
    lines.append(f"cardinals        a={a:.4f} b={b:.4f} c={c:.4f} d={d:.4f}")
    for k, v in result.indices.items():
        lines.append(f"{k:<16} {v:.4f}")
    if "crisp" in report:
        for k in ("ri", "ari", "jaccard", "fowlkes_mallows", "mirkin", "dice"):
            lines.append(f"crisp_{k:<10} {report['crisp'][k]:.4f}")
    print("\n".join(lines))
    return EXIT_OK


# ------------------------------------------------------------------- cluster


def cmd_cluster(args) -> int:
    ds = read_dataset_csv(args.data, delimiter=args.delimiter)
    cfg = ClusteringConfig(
        k=args.k,
        seed=args.seed,
        fuzzifier=args.fuzzifier,
        standardize=args.standardize,
        max_iter=args.max_iter,
        tol=args.tol,
        n_init=args.n_init,
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        if args.algorithm == "kmeans":
            fit = kmeans(ds.data, cfg)
            write_labels_csv(args.out, fit.partition)
            objective = fit.inertia
        else:
            fit = (fcm if args.algorithm == "fcm" else pd_cluster)(ds.data, cfg)
            write_membership_csv(args.out, fit.partition)
            objective = fit.objective
    sidecar = {
        "version": __version__,
        "algorithm": args.algorithm,
        "config": cfg.as_dict(),
        "input": str(args.data),
        "n": ds.data.n,
        "features": ds.feature_names,
        "dropped_columns": ds.dropped,
        "converged": fit.converged,
        "n_iter": fit.n_iter,
        "objective": objective,
        "centers": fit.centers.tolist(),
        "status": "ok" if fit.converged else "not_converged",
    }
    with open(Path(str(args.out) + ".json"), "w") as fh:
        _dump(sidecar, fh)
    if not fit.converged:
        print(f"warning: {args.algorithm} did not converge in {cfg.max_iter} iterations", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


# --------------------------------------------------------------------- truth


def cmd_truth(args) -> int:
    ds = read_labeled_csv(args.data, label_column=_label_column(args.label_column), delimiter=args.delimiter)
    P = true_fuzzy_partition(ds.data, ds.labels)
    write_membership_csv(sys.stdout if args.out is None else args.out, P)
    return EXIT_OK


# ------------------------------------------------------------------ simulate


def cmd_simulate(args) -> int:
    from . import simulation

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg = _expectation(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        if args.study == "bias":
            res = simulation.bias_experiment(
                args.n_datasets, args.seed, cfg, n_range=(args.n_min, args.n_max)
            )
            res.write_csv(out / "bias.csv")
            res.write_metadata(out / "bias.json")
            print(f"mean(ACI - ARI) = {res.mean_diff:.6g} over {len(res.rows)} datasets")
            return EXIT_OK
        if args.study == "study1":
            res = simulation.study1(args.seed, cfg)
        elif args.study == "study2":
            res = simulation.study2(args.seed, cfg, compare_to=args.compare_to)
        else:
            datasets = None
            if args.data:
                datasets = []
                for path in args.data:
                    ds = read_labeled_csv(path, label_column=_label_column(args.label_column))
                    datasets.append((Path(path).stem, ds.data, ds.labels))
            res = simulation.study3(args.seed, datasets, cfg, standardize=args.standardize)
    res.write_csv(out / f"{args.study}.csv")
    res.write_metadata(out / f"{args.study}.json")
    if args.study == "study2":
        res.write_matrix_csv(out / "study2_ndc.csv", "NDC")
        res.write_matrix_csv(out / "study2_aci.csv", "ACI")
    (out / f"{args.study}.txt").write_text(res.to_text())
    print(res.to_text())
    return EXIT_OK


# -------------------------------------------------------------------- parser


def _add_expect(p: argparse.ArgumentParser, default: str = "closed") -> None:
    p.add_argument("--expect", choices=sorted(_EXPECT), default=default, help="expected-NDC method (default: %(default)s)")
    p.add_argument("--h", type=int, default=1000, help="Monte Carlo permutations (default: %(default)s)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="concord", description="Compare crisp and fuzzy partitions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log dropped columns and other notices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="NDC, expected NDC and ACI between two partitions")
    p.add_argument("first", type=Path)
    p.add_argument("second", type=Path)
    p.add_argument("--format", choices=["auto", "labels", "membership"], default="auto")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--renormalize", action="store_true", help="rescale membership rows to sum to 1")
    _add_expect(p)
    p.add_argument("--clamp", action="store_true", help="report max(ACI, 0) as the headline ACI")
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("cluster", help="cluster a numeric CSV dataset")
    p.add_argument("algorithm", choices=["fcm", "pd", "kmeans"])
    p.add_argument("data", type=Path)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", type=Path, required=True, help="membership (or label) CSV; a .json sidecar is written next to it")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fuzzifier", type=float, default=2.0)
    p.add_argument("--standardize", action="store_true", help="z-score features first")
    p.add_argument("--max-iter", type=int, default=300)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--n-init", type=int, default=5)
    p.add_argument("--delimiter", default=",")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("truth", help="true fuzzy partition of a labeled dataset")
    p.add_argument("data", type=Path)
    p.add_argument("--label-column", default="-1", help="name or index of the label column (default: last)")
    p.add_argument("--out", type=Path)
    p.add_argument("--delimiter", default=",")
    p.set_defaults(func=cmd_truth)

    p = sub.add_parser("simulate", help="run a simulation study")
    p.add_argument("study", choices=["study1", "study2", "study3", "bias"])
    p.add_argument("--out", type=Path, required=True, help="output directory")
    _add_expect(p)
    p.add_argument("--n-datasets", type=int, default=100, help="bias: number of datasets")
    p.add_argument("--n-min", type=int, default=100, help="bias: smallest sample size")
    p.add_argument("--n-max", type=int, default=1200, help="bias: largest sample size")
    p.add_argument("--compare-to", choices=["fcm", "truth"], default="fcm", help="study2 reference partition")
    p.add_argument("--data", action="append", help="study3: labeled CSV (repeatable)")
    p.add_argument("--label-column", default="-1")
    p.add_argument("--standardize", action="store_true", help="study3: z-score features")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (CSVFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UndefinedIndexError, ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

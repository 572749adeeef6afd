"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric or degeneracy error.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

import numpy as np
from scipy.stats import gaussian_kde

from .datasets import GENERATORS, SyntheticSpec, generate_synthetic, load_dataset
from .dissimilarity import SEQUENCE, WEIGHTED_EDIT, WEIGHTED_EUCLIDEAN
from .evaluation import run_experiment
from .exceptions import DataError, DegenerateError
from .fuzzy import centrality_profile, membership_degree, score_samples
from .graph import NeighbourIndex
from .persistence import atomic_write_text, load_model, save_model
from .trainer import TrainerConfig, train

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4


def _measure_for(kind: str, requested: str | None) -> str:
    return requested or (WEIGHTED_EDIT if kind == SEQUENCE else WEIGHTED_EUCLIDEAN)


def _trainer_config(args) -> TrainerConfig:
    return TrainerConfig(tau=args.tau, percentile_l=args.percentile, alpha=args.alpha,
                         seed=args.seed, max_iterations=args.max_iterations,
                         population=args.population, max_train_size=args.max_train_size)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_train(args) -> int:
    ds = load_dataset(args.input, args.format, args.label_col)
    if args.nominal is not None:
        if ds.labels is None:
            raise DataError("--nominal needs a labelled dataset (--label-col)")
        keep = [i for i, lab in enumerate(ds.labels) if lab == args.nominal]
        if not keep:
            raise DataError(f"nominal label {args.nominal!r} not found")
        ds = ds.subset(keep)
    model = train(ds, _measure_for(ds.kind, args.measure), _trainer_config(args))
    save_model(model, args.out)
    if args.dump_graph:
        graph = NeighbourIndex(model.embedded_train).graph(model.k_star)
        atomic_write_text(args.dump_graph, graph.to_edge_list())
    print(f"trained: d={model.d} k*={model.k_star} eta={model.eta:.6g} "
          f"generations={model.iterations}")
    return EXIT_OK


def cmd_score(args) -> int:
    model = load_model(args.model)
    ds = load_dataset(args.input, args.format, args.label_col)
    decisions = score_samples(model, ds.samples)
    header = ["sample_index", "membership", "accepted", "component_j"]
    header += [f"mu_{i}" for i in range(model.d)]
    rows = [[i, repr(dec.membership), int(dec.accepted), dec.component]
            + [repr(mu) for mu in dec.memberships] for i, dec in enumerate(decisions)]
    atomic_write_text(args.out, _csv_text(header, rows))
    return EXIT_OK


def cmd_eval(args) -> int:
    ds = load_dataset(args.input, args.format, args.label_col)
    report = run_experiment(ds, args.nominal, args.split, args.repeats, _trainer_config(args),
                            _measure_for(ds.kind, args.measure))
    atomic_write_text(args.out, report.to_csv())
    print(f"AUC {report.mean:.4f} ({report.std:.4f}) over {len(report.aucs)} repeats")
    return EXIT_OK


def cmd_synth(args) -> int:
    ds = generate_synthetic(SyntheticSpec(args.generator, args.n, args.dim, args.seed))
    header = [f"x{j}" for j in range(ds.n_features)] + ["label"]
    rows = [[repr(float(v)) for v in x] + [lab] for x, lab in zip(ds.samples, ds.labels)]
    atomic_write_text(args.out, _csv_text(header, rows))
    return EXIT_OK


def cmd_report(args) -> int:
    """Centrality differences per component and a kernel density of each."""
    model = load_model(args.model)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    graph = NeighbourIndex(model.embedded_train).graph(model.k_star)
    diff_rows, dens_rows = [], []
    for c, comp in enumerate(model.partition.components):
        prof = centrality_profile(graph.subgraph(comp), model.percentile_l)
        for v, chi, diff in zip(comp, prof.centrality, prof.differences):
            diff_rows.append([c, int(v), repr(float(chi)), repr(float(diff)),
                              repr(membership_degree(float(diff), model.thresholds[c]))])
        if np.ptp(prof.differences) > 0 and comp.size > 2:
            grid = np.linspace(0.0, prof.differences.max(), 128)
            dens = gaussian_kde(prof.differences)(grid)
            dens_rows += [[c, repr(float(g)), repr(float(d))] for g, d in zip(grid, dens)]
    atomic_write_text(out / "differences.csv", _csv_text(
        ["component", "vertex", "centrality", "difference", "membership"], diff_rows))
    atomic_write_text(out / "density.csv", _csv_text(["component", "difference", "density"],
                                                     dens_rows))
    atomic_write_text(out / "thresholds.csv", _csv_text(
        ["component", "size", "chi_star", "threshold"],
        [[c, comp.size, repr(s), repr(t)] for c, (comp, s, t) in
         enumerate(zip(model.partition.components, model.chi_star, model.thresholds))]))
    return EXIT_OK


def _add_trainer_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau", type=float, default=0.05)
    p.add_argument("--percentile", type=float, default=50.0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iterations", type=int, default=50)
    p.add_argument("--population", type=int, default=20)
    p.add_argument("--max-train-size", type=int, default=500)
    p.add_argument("--measure", choices=[WEIGHTED_EUCLIDEAN, WEIGHTED_EDIT])


def _add_input_options(p: argparse.ArgumentParser, required_label=False) -> None:
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["csv", "seq"], default="csv")
    p.add_argument("--label-col", required=required_label)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entropic-occ", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model on the nominal samples of a dataset")
    _add_input_options(p)
    p.add_argument("--nominal")
    p.add_argument("--out", required=True)
    p.add_argument("--dump-graph", help="write the trained kNN graph as an edge list")
    _add_trainer_options(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("score", help="score samples with a trained model")
    _add_input_options(p)
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("eval", help="repeated AUC evaluation with one nominal class")
    _add_input_options(p)
    p.set_defaults(label_col="label")
    p.add_argument("--nominal", required=True)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--split", type=float, default=0.5)
    p.add_argument("--out", required=True)
    _add_trainer_options(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("synth", help="generate a synthetic dataset as CSV")
    p.add_argument("--generator", choices=GENERATORS, required=True)
    p.add_argument("--n", type=int, default=90)
    p.add_argument("--dim", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("report", help="per-component centrality-difference distributions")
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DegenerateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

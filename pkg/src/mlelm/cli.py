"""Command line interface: ``mlelm run|score|stats|inspect``.

Exit codes: 0 success, 1 other failure, 2 configuration error,
3 data error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .bench import (ExperimentError, emit_report, load_config, load_manifest, run_experiment,
                    score_files)
from .dataset import load_dataset, write_predictions
from .elm import load_model
from .errors import ConfigError, DataError, MlelmError, NumericError
from .metrics import METRIC_NAMES, dataset_stats
from .reference import DATASET_STATS, REFERENCE

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

log = logging.getLogger("mlelm")


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, ExperimentError):
        exc = exc.cause
    if isinstance(exc, ConfigError):
        return EXIT_CONFIG
    if isinstance(exc, DataError):
        return EXIT_DATA
    if isinstance(exc, NumericError):
        return EXIT_NUMERIC
    return EXIT_FAILURE


def _parse_seeds(text: str) -> tuple:
    try:
        seeds = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"seeds must be comma-separated integers, got {text!r}") from None
    if not seeds:
        raise argparse.ArgumentTypeError("no seeds given")
    return seeds


def cmd_run(args) -> int:
    config = load_config(args.config)
    if args.seed_override:
        config = replace(config, seeds=args.seed_override)
    if args.output_dir:
        config = replace(config, output_dir=args.output_dir)
    train_set, test_set = load_dataset(config.manifest)
    log.info("loaded %s: %d train / %d test instances, %d features, %d labels",
             config.manifest.name or config.manifest.train_path, len(train_set), len(test_set),
             train_set.feature_count, train_set.label_count)
    results = run_experiment(config, jobs=args.jobs, keep_models=args.save_models,
                             data=(train_set, test_set))
    out = Path(config.output_dir)
    paths = emit_report(results, out, config.manifest.name)

    pred_dir = out / "predictions"
    pred_dir.mkdir(exist_ok=True)
    write_predictions(out / "truth.csv", test_set.labels, test_set.label_names)
    for r in results:
        write_predictions(pred_dir / f"h{r.hidden_count}_s{r.seed}.csv", r.predicted, test_set.label_names)
        if args.save_models:
            models = out / "models"
            models.mkdir(exist_ok=True)
            r.model.save(models / f"h{r.hidden_count}_s{r.seed}.npz")

    if not args.quiet:
        print(paths["table_hamming_loss"].read_text(encoding="utf-8"))
        print(f"wrote {len(results)} runs to {out}")
    return EXIT_OK


def cmd_score(args) -> int:
    report = score_files(args.truth, args.predictions)
    for m in METRIC_NAMES:
        print(f"{m:<13s} {getattr(report, m):.6f}")
    print(f"{'instances':<13s} {report.instance_count}")
    print(f"{'labels':<13s} {report.label_count}")
    return EXIT_OK


def cmd_stats(args) -> int:
    manifest = load_manifest(args.manifest)
    train_set, test_set = load_dataset(manifest)
    print(f"dataset   {manifest.name or '-'}")
    print(f"features  {train_set.feature_count}")
    print(f"labels    {train_set.label_count}")
    print(f"{'split':<6s} {'N':>6s} {'L_c':>8s} {'L_d':>8s}")
    for name, labels in (("train", train_set.labels), ("test", test_set.labels),
                         ("all", train_set.labels + test_set.labels)):
        st = dataset_stats(labels, train_set.label_count)
        print(f"{name:<6s} {st.instance_count:>6d} {st.cardinality:>8.4f} {st.density:>8.4f}")
    canonical = REFERENCE.canonical(manifest.name) if manifest.name else None
    if canonical:
        lc, ld = DATASET_STATS[canonical]
        print(f"published {canonical}: L_c {lc}, L_d {ld}")
    return EXIT_OK


def cmd_inspect(args) -> int:
    model = load_model(args.model)
    print(f"activation     {model.activation.value}")
    print(f"seed           {model.seed}")
    print(f"init range     [{model.init_range[0]}, {model.init_range[1]}]")
    print(f"hidden units   {model.hidden_count}")
    print(f"features       {model.feature_count}")
    print(f"labels         {model.label_count}")
    print(f"|W|_F          {np.linalg.norm(model.input_weights):.6g}")
    print(f"|beta|_F       {np.linalg.norm(model.output_weights):.6g}")
    for k, v in sorted(model.metadata.items()):
        print(f"{k:<14s} {v}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mlelm", description="Multi-label ELM benchmark harness")
    parser.add_argument("--quiet", action="store_true", help="only print errors")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an experiment grid from a YAML config")
    p.add_argument("config")
    p.add_argument("--output-dir", help="override the config's output_dir")
    p.add_argument("--jobs", type=int, default=1, help="parallel runs (default 1)")
    p.add_argument("--seed-override", type=_parse_seeds, metavar="S[,S...]",
                   help="replace the config's seed list")
    p.add_argument("--save-models", action="store_true", help="write one model file per run")
    p.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("score", help="score a predictions file against a truth file")
    p.add_argument("truth")
    p.add_argument("predictions")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("stats", help="label cardinality and density of a dataset")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("inspect", help="describe a saved model file")
    p.add_argument("model")
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s %(message)s")
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except MlelmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())

"""Benchmark harness: load, train, predict and score over a grid of runs.

An experiment is the cartesian product of hidden-layer sizes and seeds on
one train/test split.  Configuration is a YAML file::

    version: 1
    dataset:
      name: scene                 # used to look up published results
      train: scene-train.arff     # relative paths resolve against the config file
      test: scene-test.arff
      labels: {trailing_count: 6} # or {names: [...]} or {xml: scene.xml}
      scaling: minmax_01          # none | minmax_01 | standardize
    model:
      hidden_counts: [100, 300, 1000, 3000]
      activation: sigmoid         # sigmoid | tanh | sine | hardlimit
      init_range: [-1.0, 1.0]
      rank_tolerance: auto        # or a nonnegative float
    seeds: [0, 1, 2, 3, 4]
    output_dir: results/scene
"""

from __future__ import annotations

import csv
import io
import logging
import math
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import yaml

from .dataset import DatasetManifest, LabelSpec, MultiLabelDataset, load_dataset, read_predictions
from .elm import Activation, ElmModel, HiddenLayerConfig, predict_labels, train
from .errors import ConfigError, DataError, MlelmError
from .metrics import METRIC_NAMES, MetricReport, evaluate
from .reference import METHODS, REFERENCE, ReferenceTable

log = logging.getLogger(__name__)

CONFIG_VERSION = 1

METRIC_TITLES = {
    "hamming_loss": "Hamming loss",
    "accuracy": "Accuracy",
    "precision": "Precision",
    "recall": "Recall",
    "f1": "F1-measure",
}


@dataclass(frozen=True)
class ExperimentConfig:
    manifest: DatasetManifest
    hidden_counts: tuple
    seeds: tuple
    activation: Activation = Activation.SIGMOID
    init_range: tuple = (-1.0, 1.0)
    rank_tolerance: float | None = None
    output_dir: str = "results"

    def __post_init__(self):
        if not self.hidden_counts:
            raise ConfigError("hidden_counts must not be empty")
        if not self.seeds:
            raise ConfigError("seeds must not be empty")
        object.__setattr__(self, "hidden_counts", tuple(self.hidden_counts))
        object.__setattr__(self, "seeds", tuple(self.seeds))
        object.__setattr__(self, "activation", Activation.parse(self.activation))
        # validates every grid point up front
        for h in self.hidden_counts:
            for s in self.seeds:
                self.layer_config(h, s)

    def layer_config(self, hidden_count: int, seed: int) -> HiddenLayerConfig:
        lo, hi = self.init_range
        return HiddenLayerConfig(hidden_count, self.activation, lo, hi, seed)

    def grid(self):
        return [(h, s) for h in self.hidden_counts for s in self.seeds]


def _require(mapping, key, where):
    if not isinstance(mapping, dict) or key not in mapping:
        raise ConfigError(f"{where}: missing required key {key!r}")
    return mapping[key]


def _int_list(value, where) -> tuple:
    if isinstance(value, int) and not isinstance(value, bool):
        value = [value]
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise ConfigError(f"{where} must be a list of integers, got {value!r}")
    return tuple(value)


def manifest_from_dict(d: dict, base_dir: Path) -> DatasetManifest:
    if not isinstance(d, dict):
        raise ConfigError("dataset section must be a mapping")
    unknown = set(d) - {"name", "train", "test", "labels", "scaling"}
    if unknown:
        raise ConfigError(f"dataset: unknown keys {sorted(unknown)}")

    def resolve(p):
        p = Path(str(p))
        return str(p if p.is_absolute() else base_dir / p)

    labels = _require(d, "labels", "dataset")
    if not isinstance(labels, dict) or len(labels) != 1:
        raise ConfigError("dataset.labels needs exactly one of trailing_count, names, xml")
    (kind, value), = labels.items()
    if kind == "trailing_count":
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"dataset.labels.trailing_count must be an integer, got {value!r}")
        spec = LabelSpec.trailing(value)
    elif kind == "names":
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise ConfigError("dataset.labels.names must be a list of strings")
        spec = LabelSpec.from_names(value)
    elif kind == "xml":
        spec = LabelSpec.from_xml(resolve(value))
    else:
        raise ConfigError(f"dataset.labels: unknown label spec {kind!r}")
    return DatasetManifest(resolve(_require(d, "train", "dataset")),
                           resolve(_require(d, "test", "dataset")),
                           spec, str(d.get("scaling", "minmax_01")), str(d.get("name", "")))


def _load_yaml(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML ({exc})") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return doc


def load_manifest(path) -> DatasetManifest:
    """Read a manifest: either a full experiment config or a bare dataset section."""
    doc = _load_yaml(path)
    section = doc.get("dataset", doc)
    return manifest_from_dict(section, Path(path).resolve().parent)


def config_from_dict(doc: dict, base_dir: Path) -> ExperimentConfig:
    version = doc.get("version")
    if version != CONFIG_VERSION:
        raise ConfigError(f"unsupported config version {version!r} (expected {CONFIG_VERSION})")
    unknown = set(doc) - {"version", "dataset", "model", "seeds", "output_dir"}
    if unknown:
        raise ConfigError(f"unknown top-level keys {sorted(unknown)}")
    manifest = manifest_from_dict(_require(doc, "dataset", "config"), base_dir)
    model = _require(doc, "model", "config")
    if not isinstance(model, dict):
        raise ConfigError("model section must be a mapping")
    unknown = set(model) - {"hidden_counts", "activation", "init_range", "rank_tolerance"}
    if unknown:
        raise ConfigError(f"model: unknown keys {sorted(unknown)}")
    init_range = model.get("init_range", [-1.0, 1.0])
    if not isinstance(init_range, list) or len(init_range) != 2:
        raise ConfigError(f"model.init_range must be [low, high], got {init_range!r}")
    tol = model.get("rank_tolerance", "auto")
    if tol == "auto" or tol is None:
        tol = None
    elif isinstance(tol, (int, float)) and not isinstance(tol, bool) and tol >= 0:
        tol = float(tol)
    else:
        raise ConfigError(f"model.rank_tolerance must be 'auto' or a nonnegative number, got {tol!r}")
    out = Path(str(doc.get("output_dir", "results")))
    try:
        init_range = (float(init_range[0]), float(init_range[1]))
    except (TypeError, ValueError):
        raise ConfigError(f"model.init_range must be numeric, got {init_range!r}") from None
    return ExperimentConfig(
        manifest=manifest,
        hidden_counts=_int_list(_require(model, "hidden_counts", "model"), "model.hidden_counts"),
        seeds=_int_list(_require(doc, "seeds", "config"), "seeds"),
        activation=model.get("activation", "sigmoid"),
        init_range=init_range,
        rank_tolerance=tol,
        output_dir=str(out if out.is_absolute() else base_dir / out),
    )


def load_config(path) -> ExperimentConfig:
    return config_from_dict(_load_yaml(path), Path(path).resolve().parent)


@dataclass
class RunResult:
    hidden_count: int
    seed: int
    report: MetricReport
    wall_time: float
    predicted: list = field(default_factory=list, repr=False)
    model: ElmModel | None = field(default=None, repr=False)


class ExperimentError(MlelmError):
    """A run failed; ``hidden_count`` and ``seed`` locate it in the grid."""

    def __init__(self, hidden_count, seed, cause):
        self.hidden_count = hidden_count
        self.seed = seed
        self.cause = cause
        super().__init__(f"run hidden_count={hidden_count} seed={seed}: {cause}")


def _run_one(config: ExperimentConfig, train_set: MultiLabelDataset, test_set: MultiLabelDataset,
             hidden_count: int, seed: int, keep_model: bool) -> RunResult:
    start = time.perf_counter()
    try:
        model = train(train_set.features, train_set.labels, config.layer_config(hidden_count, seed),
                      config.rank_tolerance)
        predicted = predict_labels(model, test_set.features)
        report = evaluate(test_set.labels, predicted)
    except MlelmError as exc:
        raise ExperimentError(hidden_count, seed, exc) from exc
    elapsed = time.perf_counter() - start
    log.info("hidden_count=%d seed=%d hamming_loss=%.4f f1=%.4f (%.2fs)",
             hidden_count, seed, report.hamming_loss, report.f1, elapsed)
    return RunResult(hidden_count, seed, report, elapsed, predicted, model if keep_model else None)


def run_experiment(config: ExperimentConfig, jobs: int = 1, keep_models: bool = False,
                   data=None) -> list:
    """Train and score every ``(hidden_count, seed)`` pair.

    Results are ordered by ``(hidden_count, seed)`` whatever the completion
    order.  ``data`` may supply an already loaded ``(train, test)`` pair.
    """
    train_set, test_set = data if data is not None else load_dataset(config.manifest)
    grid = config.grid()
    if jobs <= 1:
        results = [_run_one(config, train_set, test_set, h, s, keep_models) for h, s in grid]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda hs: _run_one(config, train_set, test_set, *hs, keep_models), grid))
    return sorted(results, key=lambda r: (r.hidden_count, r.seed))


def score_files(truth_path, predictions_path) -> MetricReport:
    """Score a predictions file against a truth file of the same format."""
    truth_names, truth = read_predictions(truth_path)
    pred_names, pred = read_predictions(predictions_path)
    if len(truth_names) != len(pred_names):
        raise DataError(f"{truth_path} has {len(truth_names)} labels but "
                        f"{predictions_path} has {len(pred_names)}")
    if truth_names != pred_names:
        raise DataError(f"label names differ between {truth_path} and {predictions_path}")
    if len(truth) != len(pred):
        raise DataError(f"{truth_path} has {len(truth)} rows but {predictions_path} has {len(pred)}")
    if not truth:
        raise DataError(f"{truth_path}: no instances to score")
    return evaluate(truth, pred)


# ---------------------------------------------------------------- reporting

RESULT_COLUMNS = ("dataset", "hidden_count", "seed", *METRIC_NAMES, "instance_count", "label_count")


def results_csv(results: Sequence[RunResult], dataset_name: str) -> str:
    """One row per run; floats use ``repr`` so the file is exact and stable."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RESULT_COLUMNS)
    for r in sorted(results, key=lambda r: (r.hidden_count, r.seed)):
        rep = r.report
        w.writerow([dataset_name, r.hidden_count, r.seed,
                    *(repr(getattr(rep, m)) for m in METRIC_NAMES),
                    rep.instance_count, rep.label_count])
    return buf.getvalue()


def read_results_csv(path) -> list:
    """Rows of :func:`results_csv` as dicts with typed values."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    out = []
    for row in rows:
        rec = {"dataset": row["dataset"], "hidden_count": int(row["hidden_count"]), "seed": int(row["seed"])}
        rec.update({m: float(row[m]) for m in METRIC_NAMES})
        rec["instance_count"] = int(row["instance_count"])
        rec["label_count"] = int(row["label_count"])
        out.append(rec)
    return out


def summarize(results: Sequence[RunResult]) -> dict:
    """``hidden_count -> metric -> (mean, std)`` over seeds."""
    by_h = {}
    for r in results:
        by_h.setdefault(r.hidden_count, []).append(r.report)
    out = {}
    for h in sorted(by_h):
        reports = by_h[h]
        out[h] = {}
        for m in METRIC_NAMES:
            vals = [getattr(rep, m) for rep in reports]
            mean = math.fsum(vals) / len(vals)
            std = statistics.pstdev(vals) if len(vals) > 1 else 0.0
            out[h][m] = (mean, std)
    return out


def lower_is_better(metric: str) -> bool:
    return metric == "hamming_loss"


def at_least_as_good(reference: float, value: float, metric: str) -> bool:
    """Whether a published value ties or beats this run's value."""
    return reference <= value if lower_is_better(metric) else reference >= value


def best_hidden_count(summary: dict, metric: str) -> int:
    # ties go to the smaller hidden layer
    if lower_is_better(metric):
        return min(summary, key=lambda h: (summary[h][metric][0], h))
    return max(summary, key=lambda h: (summary[h][metric][0], -h))


def metric_table(summary: dict, metric: str, dataset_name: str,
                 reference: ReferenceTable = REFERENCE, seed_count: int | None = None) -> str:
    """Plain-text comparison table for one metric.

    Published values that tie or beat this run's best seed mean are marked
    with ``*``.  The published ELM column is shown but never marked.
    """
    title = METRIC_TITLES[metric]
    direction = "lower" if lower_is_better(metric) else "higher"
    best_h = best_hidden_count(summary, metric)
    best = summary[best_h][metric][0]
    row = reference.row(dataset_name, metric) if dataset_name else None
    label = reference.canonical(dataset_name) or dataset_name or "dataset"

    headers = ["Dataset", *METHODS[:-1], "ELM(pub)", "ELM(run)"]
    cells = [label]
    if row is None:
        cells += ["-"] * len(METHODS)
    else:
        for m in METHODS[:-1]:
            v = row[m]
            mark = "*" if at_least_as_good(v, best, metric) else " "
            cells.append(f"{v:.3f}{mark}")
        cells.append(f"{row['ELM']:.3f} ")
    cells.append(f"{best:.4f}")
    widths = [max(len(h), len(c)) for h, c in zip(headers, cells)]
    lines = [f"{title} ({direction} is better)", ""]
    lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
    lines.append("  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip())
    lines.append("")
    if row is None:
        lines.append(f"No published reference values for {dataset_name!r}.")
    else:
        cmp = "<=" if lower_is_better(metric) else ">="
        beaten = sum(at_least_as_good(row[m], best, metric) for m in METHODS[:-1])
        lines.append(f"* published value {cmp} this run's best seed mean "
                     f"({beaten} of {len(METHODS) - 1} methods)")
    lines.append("")
    n_seeds = f"{seed_count} seeds" if seed_count else "seeds"
    lines.append(f"This run, mean +/- std over {n_seeds}:")
    for h in sorted(summary):
        mean, std = summary[h][metric]
        tag = "  <- best" if h == best_h else ""
        lines.append(f"  N'={h:<6d} {mean:.4f} +/- {std:.4f}{tag}")
    lines.append("")
    lines.append("Note: published values do not state whether they come from a single seed "
                 "or an average; this run reports seed means.")
    return "\n".join(lines) + "\n"


def emit_report(results: Sequence[RunResult], output_dir, dataset_name: str = "",
                reference: ReferenceTable = REFERENCE) -> dict:
    """Write ``results.csv``, ``timings.csv``, ``summary.csv`` and one
    ``table_<metric>.txt`` per metric; returns the written paths."""
    if not results:
        raise ValueError("no results to report")
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        paths = {}
        paths["results"] = out / "results.csv"
        paths["results"].write_text(results_csv(results, dataset_name), encoding="utf-8")

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["hidden_count", "seed", "wall_time_s"])
        for r in sorted(results, key=lambda r: (r.hidden_count, r.seed)):
            w.writerow([r.hidden_count, r.seed, f"{r.wall_time:.6f}"])
        paths["timings"] = out / "timings.csv"
        paths["timings"].write_text(buf.getvalue(), encoding="utf-8")

        summary = summarize(results)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["hidden_count", *(f"{m}_{s}" for m in METRIC_NAMES for s in ("mean", "std"))])
        for h, stats in summary.items():
            w.writerow([h, *(repr(v) for m in METRIC_NAMES for v in stats[m])])
        paths["summary"] = out / "summary.csv"
        paths["summary"].write_text(buf.getvalue(), encoding="utf-8")

        seed_count = len({r.seed for r in results})
        for m in METRIC_NAMES:
            p = out / f"table_{m}.txt"
            p.write_text(metric_table(summary, m, dataset_name, reference, seed_count), encoding="utf-8")
            paths[f"table_{m}"] = p
    except OSError as exc:
        raise DataError(f"cannot write report to {out}: {exc.strerror or exc}") from exc
    return paths

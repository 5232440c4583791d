import os
from pathlib import Path

import numpy as np
import pytest

from mlelm.arff import Attribute, write_arff
from mlelm.labels import LabelSet

DATA_DIR = Path(__file__).parent / "data"


def benchmark_data_dir() -> Path:
    """Where the public benchmark splits live (``<name>-train.arff`` etc.)."""
    return Path(os.environ.get("MLELM_DATA_DIR", Path(__file__).parent.parent / "data"))


def linear_threshold_task(seed, n_train=500, n_test=200, dim=10, labels=5):
    """Labels are indicators of random hyperplanes through the centre of
    the unit cube; each label is positive for about half the instances."""
    rng = np.random.default_rng(seed)
    w = rng.normal(size=(labels, dim))
    x = rng.uniform(0.0, 1.0, size=(n_train + n_test, dim))
    y = (x - 0.5) @ w.T > 0
    return x[:n_train], y[:n_train], x[n_train:], y[n_train:]


def to_label_sets(indicators):
    return [LabelSet.from_indicator(row) for row in indicators]


def toy_arff(x, y, relation="toy"):
    attrs = [Attribute(f"f{j}", "numeric") for j in range(x.shape[1])]
    attrs += [Attribute(f"lab{j}", "nominal", ("0", "1")) for j in range(y.shape[1])]
    return write_arff(relation, attrs, np.hstack([x, y.astype(float)]))


@pytest.fixture
def toy_split(tmp_path):
    """A small synthetic train/test pair on disk plus a matching config."""
    xtr, ytr, xte, yte = linear_threshold_task(7, n_train=120, n_test=40, dim=4, labels=3)
    (tmp_path / "toy-train.arff").write_text(toy_arff(xtr, ytr))
    (tmp_path / "toy-test.arff").write_text(toy_arff(xte, yte))
    (tmp_path / "config.yaml").write_text(
        "version: 1\n"
        "dataset:\n"
        "  name: toy\n"
        "  train: toy-train.arff\n"
        "  test: toy-test.arff\n"
        "  labels: {trailing_count: 3}\n"
        "  scaling: minmax_01\n"
        "model:\n"
        "  hidden_counts: [10, 30]\n"
        "  activation: sigmoid\n"
        "seeds: [1, 2]\n"
        "output_dir: out\n")
    return tmp_path


# one PASS/FAIL line per acceptance criterion in the terminal summary
_acceptance = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and (report.when == "call" or report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _acceptance.append((name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    seen = {}
    for name, outcome in _acceptance:
        if outcome != "passed" or name not in seen:
            seen[name] = outcome
    for name, outcome in seen.items():
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")

"""Acceptance criteria, one test each.

The terminal summary prints one PASS/FAIL line per test in this file.
Criteria that need the public benchmark datasets look for
``<name>-train.arff`` and ``<name>-test.arff`` under ``MLELM_DATA_DIR``
(default ``<repo>/data``) and fail with an explanation when the files are
absent.
"""

import time

import numpy as np
import pytest

import oracles
from conftest import benchmark_data_dir, linear_threshold_task, to_label_sets
from mlelm.arff import read_arff
from mlelm.bench import ExperimentConfig, run_experiment, summarize
from mlelm.cli import main
from mlelm.dataset import DatasetManifest, LabelSpec, fit_scaling, load_dataset, parse_arff
from mlelm.elm import HiddenLayerConfig, predict_labels, train
from mlelm.errors import ArffError, DataError
from mlelm.labels import LabelSet, bipolar_step, decode_bipolar, encode_bipolar
from mlelm.linalg import pseudoinverse
from mlelm.metrics import METRIC_NAMES, dataset_stats, evaluate, hamming_loss

# trailing label count of each public benchmark file
LABEL_COUNTS = {"emotions": 6, "yeast": 14, "scene": 6}


def penrose_errors(a, p):
    ap, pa = a @ p, p @ a
    return (
        np.linalg.norm(ap @ a - a) / np.linalg.norm(a),
        np.linalg.norm(p @ a @ p - p) / np.linalg.norm(p),
        np.linalg.norm(ap - ap.T) / np.linalg.norm(ap),
        np.linalg.norm(pa - pa.T) / np.linalg.norm(pa),
    )


def test_criterion_1_pseudoinverse_properties():
    start = time.perf_counter()
    rng = np.random.default_rng(20240101)
    worst = 0.0
    for trial in range(100):
        m, n = int(rng.integers(1, 51)), int(rng.integers(1, 31))
        if trial < 20:
            # rank deficient by column duplication
            n = max(n, 2)
            k = int(rng.integers(1, n))
            base = rng.normal(size=(m, k))
            a = base[:, np.concatenate([np.arange(k), rng.integers(0, k, size=n - k)])]
        else:
            a = rng.normal(size=(m, n))
        worst = max(worst, *penrose_errors(a, pseudoinverse(a)))
    elapsed = time.perf_counter() - start
    assert worst <= 1e-8, f"worst relative Penrose violation {worst:.3e}"
    assert elapsed < 5.0, f"took {elapsed:.2f}s"


def test_criterion_2_metric_oracle_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(7)
    empty_pairs = 0
    for _ in range(1000):
        n, L = int(rng.integers(1, 201)), int(rng.integers(1, 17))
        # densities near 0 make empty sets (and empty-empty pairs) common
        p_true, p_pred = rng.choice([0.0, 0.05, 0.2, 0.5, 0.9], size=2)
        y = to_label_sets(rng.random((n, L)) < p_true)
        z = to_label_sets(rng.random((n, L)) < p_pred)
        empty_pairs += sum(not a.members and not b.members for a, b in zip(y, z))
        report = evaluate(y, z)
        for name in METRIC_NAMES:
            assert getattr(report, name) == oracles.ALL[name](y, z), name
    elapsed = time.perf_counter() - start
    assert empty_pairs > 0
    assert elapsed < 5.0, f"took {elapsed:.2f}s"


def test_criterion_3_encoding_round_trip_and_threshold():
    rng = np.random.default_rng(3)
    for L in (1, 2, 7, 16, 32):
        sets = to_label_sets(rng.random((2000, L)) < rng.random())
        assert decode_bipolar(encode_bipolar(sets, L)) == sets
    assert decode_bipolar(encode_bipolar([LabelSet.of([], 4)], 4)) == [LabelSet.of([], 4)]
    np.testing.assert_array_equal(bipolar_step([[0.0, -0.0]]).values, [[1, 1]])
    np.testing.assert_array_equal(bipolar_step([[1e-9, -1e-9]]).values, [[1, -1]])


def test_criterion_4_synthetic_learnability():
    start = time.perf_counter()
    losses = []
    for seed in range(5):
        xtr, ytr, xte, yte = linear_threshold_task(seed)
        scaling = fit_scaling(xtr, "minmax_01")
        model = train(scaling.apply(xtr), to_label_sets(ytr), HiddenLayerConfig(200, "sigmoid", seed=seed))
        pred = predict_labels(model, scaling.apply(xte))
        losses.append(hamming_loss(to_label_sets(yte), pred))
    elapsed = time.perf_counter() - start
    mean = float(np.mean(losses))
    print(f"per-seed test Hamming loss {np.round(losses, 4).tolist()}, mean {mean:.4f}")
    assert elapsed < 10.0, f"took {elapsed:.2f}s"
    assert mean <= 0.05, f"mean test Hamming loss {mean:.4f} > 0.05"


def _manifest(name, scaling="minmax_01"):
    root = benchmark_data_dir()
    train, test = root / f"{name}-train.arff", root / f"{name}-test.arff"
    if not (train.exists() and test.exists()):
        pytest.fail(f"benchmark dataset {name!r} not found: expected {train} and {test} "
                    f"(set MLELM_DATA_DIR)", pytrace=False)
    return DatasetManifest(str(train), str(test), LabelSpec.trailing(LABEL_COUNTS[name]), scaling, name)


@pytest.mark.dataset
def test_criterion_5_dataset_stats():
    for name, lc, ld in (("emotions", 1.87, 0.312), ("yeast", 4.24, 0.303)):
        train_set, test_set = load_dataset(_manifest(name, "none"))
        stats = dataset_stats(train_set.labels + test_set.labels, train_set.label_count)
        print(f"{name}: L_c {stats.cardinality:.4f}, L_d {stats.density:.4f}")
        assert abs(stats.cardinality - lc) <= 0.02, name
        assert abs(stats.density - ld) <= 0.005, name


@pytest.mark.dataset
def test_criterion_6_published_result_bands():
    bands = {
        "scene": {"hamming_loss": ("<=", 0.12), "accuracy": (">=", 0.58)},
        "yeast": {"hamming_loss": ("<=", 0.22), "f1": (">=", 0.60)},
    }
    failures = []
    for name, checks in bands.items():
        manifest = _manifest(name)
        config = ExperimentConfig(manifest, (100, 300, 1000, 3000), (0, 1, 2, 3, 4))
        summary = summarize(run_experiment(config))
        for metric, (op, bound) in checks.items():
            means = [summary[h][metric][0] for h in summary]
            best = min(means) if op == "<=" else max(means)
            print(f"{name} {metric}: best seed mean {best:.4f} (band {op} {bound})")
            if not (best <= bound if op == "<=" else best >= bound):
                failures.append(f"{name} {metric} {best:.4f} not {op} {bound}")
    assert not failures, "; ".join(failures)


def test_criterion_7_determinism(toy_split):
    config = toy_split / "config.yaml"
    assert main(["--quiet", "run", str(config), "--output-dir", str(toy_split / "a")]) == 0
    assert main(["--quiet", "run", str(config), "--output-dir", str(toy_split / "b")]) == 0
    first = (toy_split / "a" / "results.csv").read_bytes()
    assert first == (toy_split / "b" / "results.csv").read_bytes()
    assert first.count(b"\n") == 5


# ------------------------------------------------------------ parser fuzzing

SEEDS = [
    ("@relation dense\n@attribute a numeric\n@attribute b real\n@attribute l0 {0,1}\n@attribute l1 {0,1}\n"
     "@data\n0.5,1.0,1,0\n-2,3e-3,0,1\n?,4,1,1\n",
     np.array([[0.5, 1.0, 1, 0], [-2, 3e-3, 0, 1], [np.nan, 4, 1, 1]])),
    ("% sparse rows\n@relation sparse\n@attribute a numeric\n@attribute b numeric\n@attribute l0 {0,1}\n"
     "@attribute l1 {0,1}\n@data\n{0 0.5, 2 1}\n{1 -1, 3 1}\n{}\n",
     np.array([[0.5, 0, 1, 0], [0, -1, 0, 1], [0, 0, 0, 0]])),
    ("@relation 'quoted rel'\n@attribute 'a b' NUMERIC\n@attribute c {red,'dark blue',\"x,y\"}\n"
     "@attribute l {0,1}\n@DATA\n1.5,'dark blue',1\n2.5,red,0\n3.5,'x,y',1\n",
     np.array([[1.5, 1, 1], [2.5, 0, 0], [3.5, 2, 1]])),
    ("@relation keel\n@attribute x real [0.0, 1.0]\n@attribute y integer [0, 9]\n@attribute l0 {0,1}\n"
     "@attribute l1 {0,1}\n@inputs x, y\n@outputs l0, l1\n@data\n0.25,3,1,1\n0.75,9,0,0\n",
     np.array([[0.25, 3, 1, 1], [0.75, 9, 0, 0]])),
]

_JUNK = ["{", "}", ",", "'", '"', "?", "%", "@", " ", "\\", "nan", "inf", "-", "e", "9", "\t", "\x00", "@data"]


def _mutate(text: str, rng) -> bytes:
    kind = int(rng.integers(0, 9))
    lines = text.splitlines(keepends=True)
    pos = int(rng.integers(0, len(text)))
    if kind == 0:
        out = text[:pos] + text[pos + 1:]
    elif kind == 1:
        out = text[:pos] + str(rng.choice(_JUNK)) + text[pos:]
    elif kind == 2:
        i = int(rng.integers(0, len(lines)))
        out = "".join(lines[:i] + lines[i + 1:])
    elif kind == 3:
        i = int(rng.integers(0, len(lines)))
        out = "".join(lines[:i + 1] + lines[i:])
    elif kind == 4:
        i, j = rng.integers(0, len(lines), size=2)
        lines[i], lines[j] = lines[j], lines[i]
        out = "".join(lines)
    elif kind == 5:
        out = text[:pos]
    elif kind == 6:
        return text[:pos].encode() + bytes(rng.integers(0, 256, size=int(rng.integers(1, 6))).tolist()) + text[pos:].encode()
    elif kind == 7:
        out = text.replace(",", str(rng.choice([";", " ", ",,", ""])), 1 + int(rng.integers(0, 3)))
    else:
        # several junk insertions
        out = text
        for _ in range(int(rng.integers(2, 6))):
            p = int(rng.integers(0, len(out)))
            out = out[:p] + str(rng.choice(_JUNK)) + out[p:]
    return out.encode("utf-8")


def _check_document(doc):
    n = len(doc.attributes)
    assert doc.data.shape == (len(doc.row_lines), n)
    for j, attr in enumerate(doc.attributes):
        col = doc.data[:, j]
        known = col[~np.isnan(col)]
        if attr.is_nominal:
            assert np.all((known >= 0) & (known < len(attr.values)) & (known == np.floor(known)))
        else:
            assert np.all(np.isfinite(known))


def test_criterion_8_parser_robustness():
    for text, expected in SEEDS:
        doc = read_arff(text)
        np.testing.assert_array_equal(doc.data, expected)
        labels = parse_arff(text, LabelSpec.trailing(2 if expected.shape[1] == 4 else 1))
        assert len(labels) == expected.shape[0]

    rng = np.random.default_rng(8)
    outcomes = {"rejected": 0, "accepted": 0}
    for i in range(400):
        text, _ = SEEDS[i % len(SEEDS)]
        blob = _mutate(text, rng)
        try:
            doc = read_arff(blob, source=f"fuzz-{i}")
        except ArffError as exc:
            assert exc.line is not None or "UTF-8" in str(exc), str(exc)
            outcomes["rejected"] += 1
            continue
        except Exception as exc:  # anything else is a crash
            pytest.fail(f"fuzz case {i}: {type(exc).__name__}: {exc}\n{blob!r}")
        _check_document(doc)
        outcomes["accepted"] += 1
        try:
            parse_arff(blob, LabelSpec.trailing(1))
        except DataError:
            pass
        except Exception as exc:
            pytest.fail(f"fuzz case {i} (dataset layer): {type(exc).__name__}: {exc}\n{blob!r}")
    print(f"fuzz corpus: {outcomes}")
    assert outcomes["rejected"] >= 100

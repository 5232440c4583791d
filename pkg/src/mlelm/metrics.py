"""Example-based multi-label metrics and dataset label statistics.

Every metric averages a per-instance term over instances.  Terms whose
denominator vanishes follow one convention throughout: when the predicted
and true sets are both empty the instance counts as perfect agreement (1);
when only the denominator's set is empty it contributes 0.

Per-instance terms are ratios of small integers, so they are correctly
rounded; sums use ``math.fsum`` so the result does not depend on summation
order.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .errors import LabelError
from .labels import LabelSet, indicator_matrix

METRIC_NAMES = ("hamming_loss", "accuracy", "precision", "recall", "f1")


@dataclass(frozen=True)
class MetricReport:
    hamming_loss: float
    accuracy: float
    precision: float
    recall: float
    f1: float
    instance_count: int
    label_count: int

    def __post_init__(self):
        for name in METRIC_NAMES:
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} = {v} outside [0, 1]")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DatasetStats:
    cardinality: float
    density: float
    instance_count: int
    label_count: int


def _counts(truth: Sequence[LabelSet], predicted: Sequence[LabelSet]):
    if len(truth) != len(predicted):
        raise LabelError(f"{len(truth)} true label sets but {len(predicted)} predictions")
    if not truth:
        raise LabelError("cannot score an empty set of instances")
    L = truth[0].size
    for i, (t, p) in enumerate(zip(truth, predicted)):
        if t.size != L or p.size != L:
            raise LabelError(
                f"instance {i}: label space sizes truth={t.size}, predicted={p.size}, expected {L}")
    y = indicator_matrix(truth, L)
    z = indicator_matrix(predicted, L)
    inter = (y & z).sum(axis=1)
    return L, inter, y.sum(axis=1), z.sum(axis=1)


def _ratio(num: np.ndarray, den: np.ndarray, both_empty: np.ndarray) -> np.ndarray:
    out = np.zeros(num.shape, dtype=np.float64)
    ok = den > 0
    out[ok] = num[ok] / den[ok]
    out[both_empty] = 1.0
    return out


def _mean(terms: np.ndarray) -> float:
    return math.fsum(terms.tolist()) / len(terms)


def _hamming_terms(L, inter, n_true, n_pred):
    # |Z xor Y| = |Z| + |Y| - 2|Z and Y|
    return (n_true + n_pred - 2 * inter) / L


def _accuracy_terms(L, inter, n_true, n_pred):
    return _ratio(inter, n_true + n_pred - inter, (n_true == 0) & (n_pred == 0))


def _precision_terms(L, inter, n_true, n_pred):
    return _ratio(inter, n_pred, (n_true == 0) & (n_pred == 0))


def _recall_terms(L, inter, n_true, n_pred):
    return _ratio(inter, n_true, (n_true == 0) & (n_pred == 0))


def _f1_terms(L, inter, n_true, n_pred):
    return _ratio(2 * inter, n_true + n_pred, (n_true == 0) & (n_pred == 0))


def hamming_loss(truth, predicted) -> float:
    """Mean fraction of label positions where prediction and truth differ."""
    return _mean(_hamming_terms(*_counts(truth, predicted)))


def accuracy(truth, predicted) -> float:
    """Mean Jaccard index ``|Z & Y| / |Z | Y|``."""
    return _mean(_accuracy_terms(*_counts(truth, predicted)))


def precision(truth, predicted) -> float:
    """Mean ``|Z & Y| / |Z|`` over instances (Z = predicted set)."""
    return _mean(_precision_terms(*_counts(truth, predicted)))


def recall(truth, predicted) -> float:
    """Mean ``|Z & Y| / |Y|`` over instances (Y = true set)."""
    return _mean(_recall_terms(*_counts(truth, predicted)))


def f1(truth, predicted) -> float:
    """Mean per-instance Dice coefficient ``2|Z & Y| / (|Z| + |Y|)``."""
    return _mean(_f1_terms(*_counts(truth, predicted)))


def evaluate(truth, predicted) -> MetricReport:
    """All five metrics from a single pass over the label sets."""
    counts = _counts(truth, predicted)
    return MetricReport(
        hamming_loss=_mean(_hamming_terms(*counts)),
        accuracy=_mean(_accuracy_terms(*counts)),
        precision=_mean(_precision_terms(*counts)),
        recall=_mean(_recall_terms(*counts)),
        f1=_mean(_f1_terms(*counts)),
        instance_count=len(truth),
        label_count=counts[0],
    )


def dataset_stats(labels: Sequence[LabelSet], L: int | None = None) -> DatasetStats:
    """Label cardinality (mean set size) and density (cardinality / L)."""
    if not labels:
        raise LabelError("label statistics need at least one instance")
    if L is None:
        L = labels[0].size
    for i, ls in enumerate(labels):
        if ls.size != L:
            raise LabelError(f"instance {i}: label space size {ls.size} != {L}")
    cardinality = math.fsum(len(ls) for ls in labels) / len(labels)
    return DatasetStats(cardinality, cardinality / L, len(labels), L)

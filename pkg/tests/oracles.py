"""Set-based reference implementations of the metrics.

Deliberately naive: Python sets and integer arithmetic per instance, with
no shared code path with ``mlelm.metrics``.
"""

import math


def _sets(label_sets):
    return [set(ls.members) for ls in label_sets]


def _term(num, den, both_empty):
    if both_empty:
        return 1.0
    if den == 0:
        return 0.0
    return num / den


def hamming_loss(truth, predicted):
    L = truth[0].size
    terms = [len(z ^ y) / L for y, z in zip(_sets(truth), _sets(predicted))]
    return math.fsum(terms) / len(terms)


def accuracy(truth, predicted):
    terms = [_term(len(z & y), len(z | y), not z and not y)
             for y, z in zip(_sets(truth), _sets(predicted))]
    return math.fsum(terms) / len(terms)


def precision(truth, predicted):
    terms = [_term(len(z & y), len(z), not z and not y)
             for y, z in zip(_sets(truth), _sets(predicted))]
    return math.fsum(terms) / len(terms)


def recall(truth, predicted):
    terms = [_term(len(z & y), len(y), not z and not y)
             for y, z in zip(_sets(truth), _sets(predicted))]
    return math.fsum(terms) / len(terms)


def f1(truth, predicted):
    terms = [_term(2 * len(z & y), len(z) + len(y), not z and not y)
             for y, z in zip(_sets(truth), _sets(predicted))]
    return math.fsum(terms) / len(terms)


ALL = {"hamming_loss": hamming_loss, "accuracy": accuracy, "precision": precision,
       "recall": recall, "f1": f1}

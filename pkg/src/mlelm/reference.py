"""Published example-based results used for side-by-side report tables.

Provenance: test-split values for six benchmark datasets as published
alongside the original multi-label ELM classifier.  The nine baseline
columns were compiled there from Madjarov et al., "An extensive
experimental comparison of methods for multi-label learning", Pattern
Recognition 45 (2012) 3084-3104.  Display only; nothing here feeds a
computation.
"""

from __future__ import annotations

METHODS = ("CC", "QWML", "HOMER", "ML-C4.5", "PCT", "ML-kNN", "ECC", "RFML-C4.5", "RF-PCT", "ELM")
DATASETS = ("Emotions", "Yeast", "Scene", "Corel5k", "Enron", "Medical")

# metric -> dataset -> one value per entry of METHODS
_TABLES = {
    "hamming_loss": {
        "Emotions": (0.256, 0.254, 0.361, 0.247, 0.267, 0.294, 0.281, 0.198, 0.189, 0.251),
        "Yeast": (0.193, 0.191, 0.207, 0.234, 0.219, 0.198, 0.207, 0.205, 0.197, 0.191),
        "Scene": (0.082, 0.081, 0.082, 0.141, 0.129, 0.099, 0.085, 0.116, 0.094, 0.085),
        "Corel5k": (0.017, 0.012, 0.012, 0.010, 0.009, 0.009, 0.009, 0.009, 0.009, 0.009),
        "Enron": (0.064, 0.048, 0.051, 0.053, 0.058, 0.051, 0.049, 0.047, 0.046, 0.047),
        "Medical": (0.077, 0.012, 0.012, 0.013, 0.023, 0.017, 0.014, 0.022, 0.014, 0.011),
    },
    "accuracy": {
        "Emotions": (0.356, 0.373, 0.471, 0.536, 0.448, 0.319, 0.432, 0.488, 0.519, 0.412),
        "Yeast": (0.527, 0.523, 0.559, 0.480, 0.440, 0.492, 0.546, 0.453, 0.478, 0.514),
        "Scene": (0.723, 0.683, 0.717, 0.569, 0.538, 0.629, 0.735, 0.388, 0.541, 0.676),
        "Corel5k": (0.030, 0.195, 0.179, 0.002, 0.000, 0.014, 0.001, 0.005, 0.009, 0.044),
        "Enron": (0.334, 0.388, 0.478, 0.418, 0.196, 0.319, 0.462, 0.374, 0.416, 0.418),
        "Medical": (0.211, 0.658, 0.713, 0.730, 0.228, 0.528, 0.611, 0.250, 0.591, 0.715),
    },
    "precision": {
        "Emotions": (0.551, 0.548, 0.509, 0.606, 0.577, 0.502, 0.580, 0.625, 0.644, 0.548),
        "Yeast": (0.727, 0.718, 0.663, 0.620, 0.705, 0.732, 0.667, 0.738, 0.744, 0.718),
        "Scene": (0.758, 0.711, 0.746, 0.592, 0.565, 0.661, 0.770, 0.403, 0.565, 0.685),
        "Corel5k": (0.042, 0.326, 0.317, 0.005, 0.000, 0.035, 0.002, 0.018, 0.030, 0.144),
        "Enron": (0.464, 0.624, 0.616, 0.623, 0.415, 0.587, 0.652, 0.690, 0.709, 0.668),
        "Medical": (0.217, 0.697, 0.762, 0.797, 0.285, 0.575, 0.662, 0.284, 0.635, 0.774),
    },
    "recall": {
        "Emotions": (0.397, 0.429, 0.775, 0.703, 0.534, 0.377, 0.533, 0.545, 0.582, 0.491),
        "Yeast": (0.600, 0.600, 0.714, 0.608, 0.490, 0.549, 0.673, 0.491, 0.523, 0.608),
        "Scene": (0.726, 0.709, 0.744, 0.582, 0.539, 0.655, 0.771, 0.388, 0.541, 0.709),
        "Corel5k": (0.056, 0.264, 0.250, 0.002, 0.000, 0.014, 0.001, 0.005, 0.009, 0.043),
        "Enron": (0.507, 0.453, 0.610, 0.487, 0.229, 0.358, 0.560, 0.398, 0.452, 0.508),
        "Medical": (0.754, 0.801, 0.760, 0.740, 0.227, 0.547, 0.642, 0.251, 0.599, 0.744),
    },
    "f1": {
        "Emotions": (0.461, 0.481, 0.614, 0.651, 0.554, 0.431, 0.556, 0.583, 0.611, 0.518),
        "Yeast": (0.657, 0.654, 0.687, 0.614, 0.578, 0.628, 0.670, 0.589, 0.614, 0.658),
        "Scene": (0.742, 0.710, 0.745, 0.587, 0.551, 0.658, 0.771, 0.395, 0.553, 0.697),
        "Corel5k": (0.048, 0.292, 0.280, 0.003, 0.000, 0.021, 0.001, 0.008, 0.014, 0.033),
        "Enron": (0.484, 0.525, 0.613, 0.546, 0.295, 0.445, 0.602, 0.505, 0.552, 0.577),
        "Medical": (0.337, 0.745, 0.761, 0.768, 0.253, 0.560, 0.652, 0.267, 0.616, 0.759),
    },
}

# label statistics (cardinality, density) published for the same datasets
DATASET_STATS = {
    "Emotions": (1.87, 0.312),
    "Yeast": (4.24, 0.303),
    "Scene": (1.07, 0.178),
    "Corel5k": (3.52, 0.009),
    "Enron": (3.38, 0.064),
    "Medical": (1.25, 0.027),
}

_ALIASES = {"emotion": "Emotions"}


class ReferenceTable:
    """Read-only lookup ``(dataset, method, metric) -> published value``."""

    methods = METHODS
    datasets = DATASETS

    def __init__(self, tables=None):
        self._tables = tables if tables is not None else _TABLES
        for metric, rows in self._tables.items():
            for ds, values in rows.items():
                if len(values) != len(METHODS):
                    raise ValueError(f"{metric}/{ds}: {len(values)} values for {len(METHODS)} methods")
                if not all(0.0 <= v <= 1.0 for v in values):
                    raise ValueError(f"{metric}/{ds}: value outside [0, 1]")

    @staticmethod
    def canonical(dataset: str) -> str | None:
        key = dataset.strip().lower()
        key = _ALIASES.get(key, key)
        for name in DATASETS:
            if name.lower() == key.lower():
                return name
        return None

    def value(self, dataset: str, method: str, metric: str) -> float:
        name = self.canonical(dataset)
        if name is None:
            raise KeyError(dataset)
        return self._tables[metric][name][METHODS.index(method)]

    def row(self, dataset: str, metric: str) -> dict | None:
        name = self.canonical(dataset)
        if name is None:
            return None
        return dict(zip(METHODS, self._tables[metric][name]))


REFERENCE = ReferenceTable()

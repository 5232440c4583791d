"""Multi-label datasets: label designation, imputation, scaling, files.

A dataset file is an ARFF document in which some attributes are labels.
Which ones is given by a :class:`LabelSpec`: the trailing ``k`` attributes
(KEEL convention), an explicit list of names, or a Mulan XML label file.
The remaining attributes become features; nominal attributes with more
than two values are one-hot expanded.
"""

from __future__ import annotations

import csv
import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .arff import ArffDocument, Attribute, read_arff, write_arff
from .errors import ArffError, ConfigError, DataError
from .labels import LabelSet

SCALING_MODES = ("none", "minmax_01", "standardize")

# nominal spellings accepted for label membership
_LABEL_VALUES = {"0": 0.0, "1": 1.0, "false": 0.0, "true": 1.0}


@dataclass(frozen=True)
class LabelSpec:
    """Exactly one of ``trailing_count``, ``names`` or ``xml_path``."""

    trailing_count: int | None = None
    names: tuple | None = None
    xml_path: str | None = None

    def __post_init__(self):
        given = [v is not None for v in (self.trailing_count, self.names, self.xml_path)]
        if sum(given) != 1:
            raise ConfigError("label spec needs exactly one of trailing_count, names, xml_path")
        if self.trailing_count is not None:
            k = self.trailing_count
            if isinstance(k, bool) or not isinstance(k, int) or k < 1:
                raise ConfigError(f"trailing_count must be a positive integer, got {k!r}")
        if self.names is not None:
            names = tuple(self.names)
            if not names or len(set(names)) != len(names):
                raise ConfigError("label name list must be nonempty and free of duplicates")
            object.__setattr__(self, "names", names)

    @classmethod
    def trailing(cls, k: int) -> "LabelSpec":
        return cls(trailing_count=k)

    @classmethod
    def from_names(cls, names: Sequence[str]) -> "LabelSpec":
        return cls(names=tuple(names))

    @classmethod
    def from_xml(cls, path) -> "LabelSpec":
        return cls(xml_path=str(path))

    def label_names(self, attributes: Sequence[Attribute]) -> list:
        if self.trailing_count is not None:
            if self.trailing_count >= len(attributes):
                raise DataError(
                    f"trailing_count {self.trailing_count} leaves no features "
                    f"among {len(attributes)} attributes")
            return [a.name for a in attributes[-self.trailing_count:]]
        if self.names is not None:
            return list(self.names)
        return read_mulan_xml(self.xml_path)


def read_mulan_xml(path) -> list:
    """Label names from a Mulan ``<labels>`` file, in document order.

    Nested (hierarchical) ``label`` elements are flattened.
    """
    try:
        root = ET.parse(path).getroot()
    except (OSError, ET.ParseError) as exc:
        raise DataError(f"{path}: cannot read label XML ({exc})") from exc
    if _local(root.tag) != "labels":
        raise DataError(f"{path}: root element is <{_local(root.tag)}>, expected <labels>")
    names = []
    for el in root.iter():
        if _local(el.tag) == "label":
            name = el.get("name")
            if not name:
                raise DataError(f"{path}: <label> element without a name attribute")
            names.append(name)
    if not names:
        raise DataError(f"{path}: no labels declared")
    if len(set(names)) != len(names):
        raise DataError(f"{path}: duplicate label names")
    return names


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


@dataclass(frozen=True)
class Scaling:
    """Per-feature affine map ``(x - offset) / scale`` fitted on a train split."""

    mode: str
    offset: np.ndarray
    scale: np.ndarray

    def apply(self, features: np.ndarray) -> np.ndarray:
        if self.mode == "none":
            return features
        return (features - self.offset) / self.scale


def fit_scaling(features: np.ndarray, mode: str) -> Scaling:
    if mode not in SCALING_MODES:
        raise ConfigError(f"unknown scaling mode {mode!r} (expected one of {', '.join(SCALING_MODES)})")
    n = features.shape[1]
    if mode == "none" or features.shape[0] == 0:
        return Scaling(mode, np.zeros(n), np.ones(n))
    if mode == "minmax_01":
        offset = features.min(axis=0)
        spread = features.max(axis=0) - offset
    else:
        offset = features.mean(axis=0)
        spread = features.std(axis=0)
    # constant columns map to 0
    scale = np.where(spread > 0, spread, 1.0)
    return Scaling(mode, offset, scale)


@dataclass(frozen=True, eq=False)
class MultiLabelDataset:
    features: np.ndarray
    labels: tuple
    label_count: int
    attribute_names: tuple
    label_names: tuple
    relation: str = ""
    scaling: Scaling | None = None

    def __post_init__(self):
        f = np.asarray(self.features, dtype=np.float64)
        if f.ndim != 2 or f.shape[1] != len(self.attribute_names):
            raise DataError(f"feature matrix {f.shape} does not match {len(self.attribute_names)} names")
        if f.shape[0] != len(self.labels):
            raise DataError(f"{f.shape[0]} feature rows but {len(self.labels)} label sets")
        if not np.isfinite(f).all():
            raise DataError("features contain non-finite values")
        if len(self.label_names) != self.label_count:
            raise DataError(f"{len(self.label_names)} label names for {self.label_count} labels")
        for i, ls in enumerate(self.labels):
            if ls.size != self.label_count:
                raise DataError(f"instance {i}: label space size {ls.size} != {self.label_count}")
        f = f.copy()
        f.setflags(write=False)
        object.__setattr__(self, "features", f)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "attribute_names", tuple(self.attribute_names))
        object.__setattr__(self, "label_names", tuple(self.label_names))

    def __len__(self):
        return len(self.labels)

    @property
    def feature_count(self) -> int:
        return self.features.shape[1]

    def label_indicators(self) -> np.ndarray:
        out = np.zeros((len(self), self.label_count), dtype=bool)
        for i, ls in enumerate(self.labels):
            out[i, list(ls.members)] = True
        return out


@dataclass
class _Split:
    """A parsed file before imputation and scaling."""

    doc: ArffDocument
    features: np.ndarray  # may contain NaN
    labels: list
    feature_names: list
    label_names: list


def _feature_columns(attr: Attribute):
    """Names and an encoder for one non-label attribute."""
    if not attr.is_nominal:
        return [attr.name], lambda col: col[:, None]
    values = attr.values
    if len(values) <= 2:
        if set(values) <= {"0", "1"}:
            lookup = np.array([float(v) for v in values])
        else:
            lookup = np.arange(len(values), dtype=np.float64)
        def encode(col, lookup=lookup):
            out = np.full(col.shape, np.nan)
            ok = ~np.isnan(col)
            out[ok] = lookup[col[ok].astype(int)]
            return out[:, None]
        return [attr.name], encode
    def one_hot(col, k=len(values)):
        out = np.zeros((col.shape[0], k))
        ok = ~np.isnan(col)
        out[np.flatnonzero(ok), col[ok].astype(int)] = 1.0
        out[~ok] = np.nan
        return out
    return [f"{attr.name}={v}" for v in values], one_hot


def _split_from_doc(doc: ArffDocument, label_spec: LabelSpec, source=None) -> _Split:
    label_names = label_spec.label_names(doc.attributes)
    index = {a.name: i for i, a in enumerate(doc.attributes)}
    label_cols = []
    for name in label_names:
        if name not in index:
            raise DataError(f"{source or doc.relation}: label {name!r} is not a declared attribute")
        attr = doc.attributes[index[name]]
        if attr.is_nominal and not all(v.lower() in _LABEL_VALUES for v in attr.values):
            raise ArffError(f"label attribute {name!r} must take values in {{0,1}}, declares {attr.values}",
                            attr.line, source)
        label_cols.append(index[name])
    if len(label_cols) == len(doc.attributes):
        raise DataError(f"{source or doc.relation}: every attribute is a label; no features left")

    raw = doc.data[:, label_cols]
    ind = np.zeros(raw.shape, dtype=bool)
    for j, c in enumerate(label_cols):
        attr = doc.attributes[c]
        col = raw[:, j]
        for i in np.flatnonzero(np.isnan(col)):
            raise ArffError(f"missing value for label {attr.name!r}", doc.row_lines[i], source)
        if attr.is_nominal:
            col = np.array([_LABEL_VALUES[v.lower()] for v in attr.values])[col.astype(int)]
        for i in np.flatnonzero((col != 0.0) & (col != 1.0)):
            raise ArffError(f"label {attr.name!r} has value {col[i]!r}, expected 0 or 1",
                            doc.row_lines[i], source)
        ind[:, j] = col == 1.0
    L = len(label_cols)
    labels = [LabelSet(frozenset(np.flatnonzero(r).tolist()), L) for r in ind]

    blocks, names = [], []
    label_set = set(label_cols)
    for c, attr in enumerate(doc.attributes):
        if c in label_set:
            continue
        cols, encode = _feature_columns(attr)
        names += cols
        blocks.append(encode(doc.data[:, c]))
    features = np.hstack(blocks) if blocks else np.zeros((doc.data.shape[0], 0))
    return _Split(doc, features, labels, names, label_names)


def _impute(features: np.ndarray, means: np.ndarray) -> np.ndarray:
    missing = np.isnan(features)
    if not missing.any():
        return features
    out = features.copy()
    out[missing] = np.broadcast_to(means, features.shape)[missing]
    return out


def _column_means(features: np.ndarray) -> np.ndarray:
    if features.shape[0] == 0:
        return np.zeros(features.shape[1])
    counts = (~np.isnan(features)).sum(axis=0)
    sums = np.nansum(features, axis=0)
    # an all-missing column imputes to 0
    return np.where(counts > 0, sums / np.maximum(counts, 1), 0.0)


def _finish(split: _Split, means, scaling: Scaling) -> MultiLabelDataset:
    features = scaling.apply(_impute(split.features, means))
    return MultiLabelDataset(features, tuple(split.labels), len(split.label_names),
                             tuple(split.feature_names), tuple(split.label_names),
                             split.doc.relation, scaling)


def parse_arff(data, label_spec: LabelSpec, source=None, scaling_mode="none") -> MultiLabelDataset:
    """Parse one ARFF document into a dataset.

    Missing feature values are replaced by this file's own column means;
    use :func:`load_dataset` to impute and scale a test split with
    statistics from its train split.
    """
    split = _split_from_doc(read_arff(data, source), label_spec, source)
    means = _column_means(split.features)
    scaling = fit_scaling(_impute(split.features, means), scaling_mode)
    return _finish(split, means, scaling)


@dataclass(frozen=True)
class DatasetManifest:
    train_path: str
    test_path: str
    label_spec: LabelSpec
    scaling_mode: str = "minmax_01"
    name: str = ""

    def __post_init__(self):
        if self.scaling_mode not in SCALING_MODES:
            raise ConfigError(f"unknown scaling mode {self.scaling_mode!r}")


def _read_split(path, label_spec) -> _Split:
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return _split_from_doc(read_arff(raw, source=str(path)), label_spec, str(path))


def load_dataset(manifest: DatasetManifest):
    """Load ``(train, test)``; imputation and scaling are fitted on train only."""
    train = _read_split(manifest.train_path, manifest.label_spec)
    test = _read_split(manifest.test_path, manifest.label_spec)
    for split, path in ((train, manifest.train_path), (test, manifest.test_path)):
        if not split.labels:
            raise DataError(f"{path}: split has no instances")
    if train.feature_names != test.feature_names:
        raise DataError(f"feature schemas differ between {manifest.train_path} and {manifest.test_path}")
    if train.label_names != test.label_names:
        raise DataError(f"label schemas differ between {manifest.train_path} and {manifest.test_path}")
    means = _column_means(train.features)
    scaling = fit_scaling(_impute(train.features, means), manifest.scaling_mode)
    return _finish(train, means, scaling), _finish(test, means, scaling)


def dataset_to_arff(dataset: MultiLabelDataset) -> str:
    """Dense ARFF with numeric features followed by ``{0,1}`` labels.

    Parsing the result with ``LabelSpec.trailing(dataset.label_count)``
    reproduces features, labels and names.
    """
    attrs = [Attribute(n, "numeric") for n in dataset.attribute_names]
    attrs += [Attribute(n, "nominal", ("0", "1")) for n in dataset.label_names]
    data = np.hstack([dataset.features, dataset.label_indicators().astype(np.float64)])
    return write_arff(dataset.relation or "dataset", attrs, data)


def write_predictions(path, predicted: Sequence[LabelSet], label_names: Sequence[str]) -> None:
    """CSV with a header of label names, then one 0/1 row per instance."""
    L = len(label_names)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(label_names)
    for i, ls in enumerate(predicted):
        if ls.size != L:
            raise DataError(f"prediction {i} has label space size {ls.size}, expected {L}")
        writer.writerow(["1" if j in ls.members else "0" for j in range(L)])
    try:
        Path(path).write_text(buf.getvalue(), encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_predictions(path):
    """Inverse of :func:`write_predictions`; returns ``(label_names, label_sets)``."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or not rows[0]:
        raise DataError(f"{path}: missing header row")
    names = rows[0]
    L = len(names)
    sets = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != L:
            raise DataError(f"{path}:{lineno}: {len(row)} flags, header names {L} labels")
        flags = [c.strip() for c in row]
        if any(c not in ("0", "1") for c in flags):
            raise DataError(f"{path}:{lineno}: flags must be 0 or 1")
        sets.append(LabelSet(frozenset(j for j, c in enumerate(flags) if c == "1"), L))
    return names, sets

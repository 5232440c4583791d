"""Extreme learning machine for multi-label classification.

A single hidden layer with random, fixed input weights and biases maps
each instance to ``g(W x + b)``.  Output weights are the minimum-norm
least-squares fit of that hidden representation to the bipolar label
matrix, and predictions are read off by thresholding at zero.
"""

from __future__ import annotations

import enum
import io
import json
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ConfigError, DataError, LabelError, NumericError, ShapeError
from .labels import LabelSet, bipolar_step, decode_bipolar, encode_bipolar
from .linalg import as_dense, solve_output_weights

MODEL_FORMAT = "mlelm-model"
MODEL_FORMAT_VERSION = 1


class Activation(str, enum.Enum):
    SIGMOID = "sigmoid"
    TANH = "tanh"
    SINE = "sine"
    HARDLIMIT = "hardlimit"

    def __call__(self, z: np.ndarray) -> np.ndarray:
        if self is Activation.SIGMOID:
            # 1 / (1 + e^-z) without overflow for large |z|
            return np.exp(-np.logaddexp(0.0, -z))
        if self is Activation.TANH:
            return np.tanh(z)
        if self is Activation.SINE:
            return np.sin(z)
        return (z >= 0.0).astype(np.float64)

    @classmethod
    def parse(cls, value) -> "Activation":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(a.value for a in cls)
            raise ConfigError(f"unknown activation {value!r} (expected one of {names})") from None


@dataclass(frozen=True)
class HiddenLayerConfig:
    """Random hidden layer settings.

    ``hidden_count`` has no default on purpose: there is no universally
    sensible width, so every experiment states it.
    """

    hidden_count: int
    activation: Activation = Activation.SIGMOID
    init_low: float = -1.0
    init_high: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.hidden_count, bool) or int(self.hidden_count) != self.hidden_count:
            raise ConfigError(f"hidden_count must be an integer, got {self.hidden_count!r}")
        if self.hidden_count < 1:
            raise ConfigError(f"hidden_count must be >= 1, got {self.hidden_count}")
        object.__setattr__(self, "hidden_count", int(self.hidden_count))
        object.__setattr__(self, "activation", Activation.parse(self.activation))
        low, high = float(self.init_low), float(self.init_high)
        if not (np.isfinite(low) and np.isfinite(high) and low < high):
            raise ConfigError(f"init range [{low}, {high}] is empty or not finite")
        object.__setattr__(self, "init_low", low)
        object.__setattr__(self, "init_high", high)
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))


def derive_rng(seed: int, purpose: str) -> np.random.Generator:
    """Independent generator for one named purpose under a master seed.

    New purposes never shift the streams of existing ones.
    """
    tag = zlib.crc32(purpose.encode("utf-8"))
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(tag,))))


def init_hidden_layer(config: HiddenLayerConfig, feature_count: int):
    """Draw ``(input_weights, biases)`` uniformly on the configured range.

    Returns
    -------
    input_weights : ndarray of shape (hidden_count, feature_count)
    biases : ndarray of shape (hidden_count,)
    """
    if feature_count < 1:
        raise ShapeError(f"feature_count must be >= 1, got {feature_count}")
    lo, hi = config.init_low, config.init_high
    w = derive_rng(config.seed, "input_weights").uniform(
        lo, hi, size=(config.hidden_count, feature_count))
    b = derive_rng(config.seed, "biases").uniform(lo, hi, size=config.hidden_count)
    return w, b


def hidden_output_matrix(input_weights, biases, activation, x) -> np.ndarray:
    """``H[k, i] = g(w_i . x_k + b_i)``, shape (N, hidden_count)."""
    w = np.asarray(input_weights, dtype=np.float64)
    x = as_dense(x, "X")
    if x.shape[1] != w.shape[1]:
        raise ShapeError(f"X has {x.shape[1]} features, hidden layer expects {w.shape[1]}")
    h = Activation.parse(activation)(x @ w.T + biases)
    if not np.isfinite(h).all():
        raise NumericError("hidden layer produced non-finite activations")
    return h


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ElmModel:
    """Trained classifier; arrays are read-only."""

    input_weights: np.ndarray
    biases: np.ndarray
    output_weights: np.ndarray
    activation: Activation
    seed: int | None = None
    init_range: tuple = (-1.0, 1.0)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "activation", Activation.parse(self.activation))
        for name in ("input_weights", "biases", "output_weights"):
            arr = _frozen(getattr(self, name))
            if not np.isfinite(arr).all():
                raise NumericError(f"{name} contains non-finite values")
            object.__setattr__(self, name, arr)
        w, b, beta = self.input_weights, self.biases, self.output_weights
        if w.ndim != 2 or b.shape != (w.shape[0],) or beta.ndim != 2 or beta.shape[0] != w.shape[0]:
            raise ShapeError(
                f"inconsistent model shapes: W {w.shape}, b {b.shape}, beta {beta.shape}")

    @property
    def hidden_count(self) -> int:
        return self.input_weights.shape[0]

    @property
    def feature_count(self) -> int:
        return self.input_weights.shape[1]

    @property
    def label_count(self) -> int:
        return self.output_weights.shape[1]

    def hidden(self, x) -> np.ndarray:
        return hidden_output_matrix(self.input_weights, self.biases, self.activation, x)

    def predict_raw(self, x) -> np.ndarray:
        return predict_raw(self, x)

    def predict_labels(self, x) -> list:
        return predict_labels(self, x)

    def save(self, path) -> None:
        save_model(self, path)


def _check_training_inputs(x, labels):
    x = as_dense(x, "X")
    if x.shape[0] == 0:
        raise ShapeError("empty training set")
    if len(labels) != x.shape[0]:
        raise ShapeError(f"{x.shape[0]} instances but {len(labels)} label sets")
    sizes = {ls.size for ls in labels}
    if len(sizes) != 1:
        raise LabelError(f"label sets disagree on label space size: {sorted(sizes)}")
    return x, sizes.pop()


def train(x, labels: Sequence[LabelSet], config: HiddenLayerConfig,
          rank_tolerance=None) -> ElmModel:
    """Fit output weights ``beta = H^+ Y`` against bipolar targets."""
    x, L = _check_training_inputs(x, labels)
    w, b = init_hidden_layer(config, x.shape[1])
    h = hidden_output_matrix(w, b, config.activation, x)
    y = encode_bipolar(labels, L).values.astype(np.float64)
    beta = solve_output_weights(h, y, rank_tolerance)
    return ElmModel(w, b, beta, config.activation, seed=config.seed,
                    init_range=(config.init_low, config.init_high))


def predict_raw(model: ElmModel, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 2 and x.shape[0] == 0:
        if x.shape[1] != model.feature_count:
            raise ShapeError(f"X has {x.shape[1]} features, model expects {model.feature_count}")
        return np.zeros((0, model.label_count))
    return model.hidden(x) @ model.output_weights


def predict_labels(model: ElmModel, x) -> list:
    return decode_bipolar(bipolar_step(predict_raw(model, x)))


def save_model(model: ElmModel, path) -> None:
    """Write an ``.npz`` archive: float64 arrays plus a JSON header."""
    header = {
        "format": MODEL_FORMAT,
        "version": MODEL_FORMAT_VERSION,
        "activation": model.activation.value,
        "seed": model.seed,
        "init_range": list(model.init_range),
        "hidden_count": model.hidden_count,
        "feature_count": model.feature_count,
        "label_count": model.label_count,
        "metadata": model.metadata,
    }
    buf = io.BytesIO()
    np.savez(buf, header=np.array(json.dumps(header, sort_keys=True)),
             input_weights=model.input_weights, biases=model.biases,
             output_weights=model.output_weights)
    Path(path).write_bytes(buf.getvalue())


def load_model(path) -> ElmModel:
    try:
        with np.load(path, allow_pickle=False) as npz:
            header = json.loads(str(npz["header"]))
            if not isinstance(header, dict) or header.get("format") != MODEL_FORMAT:
                tag = header.get("format") if isinstance(header, dict) else None
                raise DataError(f"{path}: not a model file (format tag {tag!r})")
            arrays = {k: npz[k] for k in ("input_weights", "biases", "output_weights")}
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise DataError(f"{path}: not a readable model file ({exc})") from exc
    if header.get("version") != MODEL_FORMAT_VERSION:
        raise DataError(f"{path}: unsupported model format version {header.get('version')!r}")
    model = ElmModel(activation=header["activation"], seed=header.get("seed"),
                     init_range=tuple(header.get("init_range", (-1.0, 1.0))),
                     metadata=header.get("metadata") or {}, **arrays)
    expected = (header["hidden_count"], header["feature_count"], header["label_count"])
    if (model.hidden_count, model.feature_count, model.label_count) != tuple(expected):
        raise DataError(f"{path}: header shapes {expected} disagree with stored arrays")
    return model

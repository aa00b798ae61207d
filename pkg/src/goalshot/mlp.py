"""Multilayer perceptron scorer, trained from scratch.

Architecture: fully connected, hyperbolic tangent at every layer, default
22-5-2. Inputs are z-scored with statistics taken from the training set
(raw pitch coordinates saturate tanh); the normalization constants travel
with the model. Training is plain online backpropagation at a constant
learning rate: per epoch the examples are visited in a seeded-shuffled
order and each one triggers an immediate gradient step on the per-example
MSE (mean over the two output nodes). Training stops after max_epochs or
`patience` consecutive validation failures, where a failure is an epoch
whose validation MSE does not improve on the best seen so far; the
returned weights are those of the best validation epoch.

The two outputs are folded into a single score in [0, 1] via

    score = (node1 - node2) / 4 + 0.5

so the ideal GOAL response (+1, -1) maps to 1.0 and the ideal NO_GOAL
response (-1, +1) maps to 0.0.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .scenes import Label

MODEL_FORMAT = "goalshot-mlp"
MODEL_VERSION = 1

GOAL_TARGET = (1.0, -1.0)
NO_GOAL_TARGET = (-1.0, 1.0)


def targets_from_labels(labels: Sequence[Label]) -> np.ndarray:
    """(n, 2) training targets for a label sequence."""
    targets = np.empty((len(labels), 2))
    for i, label in enumerate(labels):
        if label is Label.GOAL:
            targets[i] = GOAL_TARGET
        elif label is Label.NO_GOAL:
            targets[i] = NO_GOAL_TARGET
        else:
            raise ValueError(f"unlabeled example at index {i}")
    return targets


@dataclass(eq=False)
class MlpParams:
    """Network weights plus the input normalization baked in at training."""

    layer_sizes: tuple[int, ...]
    weights: list[np.ndarray]      # per layer, fan_in x fan_out
    biases: list[np.ndarray]       # per layer, (fan_out,)
    norm_mean: np.ndarray
    norm_std: np.ndarray

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.layer_sizes)
        object.__setattr__(self, "layer_sizes", sizes)
        if len(sizes) < 2 or any(s < 1 for s in sizes):
            raise ValueError(f"invalid layer sizes {sizes}")
        if len(self.weights) != len(sizes) - 1 or len(self.biases) != len(sizes) - 1:
            raise ValueError("one weight matrix and bias vector per layer required")
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape != (sizes[i], sizes[i + 1]) or b.shape != (sizes[i + 1],):
                raise ValueError(f"layer {i} has shape {w.shape}/{b.shape}, "
                                 f"expected {(sizes[i], sizes[i + 1])}/{(sizes[i + 1],)}")
        if self.norm_mean.shape != (sizes[0],) or self.norm_std.shape != (sizes[0],):
            raise ValueError("normalization must cover every input feature")
        if np.any(self.norm_std <= 0):
            raise ValueError("normalization stds must be positive")

    def copy(self) -> MlpParams:
        return MlpParams(
            layer_sizes=self.layer_sizes,
            weights=[w.copy() for w in self.weights],
            biases=[b.copy() for b in self.biases],
            norm_mean=self.norm_mean.copy(),
            norm_std=self.norm_std.copy(),
        )


def init_params(layer_sizes: Sequence[int], norm_mean: np.ndarray,
                norm_std: np.ndarray, rng: np.random.Generator,
                half_range: float = 0.1) -> MlpParams:
    """Uniform weight/bias init in [-half_range, +half_range] to break symmetry."""
    sizes = tuple(int(s) for s in layer_sizes)
    weights = [rng.uniform(-half_range, half_range, (sizes[i], sizes[i + 1]))
               for i in range(len(sizes) - 1)]
    biases = [rng.uniform(-half_range, half_range, sizes[i + 1])
              for i in range(len(sizes) - 1)]
    return MlpParams(sizes, weights, biases, np.asarray(norm_mean, float),
                     np.asarray(norm_std, float))


def _normalize(params: MlpParams, features: np.ndarray) -> np.ndarray:
    x = np.asarray(features, dtype=float)
    expected = (params.layer_sizes[0],) if x.ndim == 1 else (x.shape[0], params.layer_sizes[0])
    if x.shape != expected:
        raise ValueError(f"expected {params.layer_sizes[0]} features, got shape {x.shape}")
    return (x - params.norm_mean) / params.norm_std


def _forward_normalized(params: MlpParams, x: np.ndarray) -> np.ndarray:
    for w, b in zip(params.weights, params.biases):
        x = np.tanh(x @ w + b)
    return x


def forward(params: MlpParams, features: np.ndarray) -> tuple[float, float]:
    """Raw (node1, node2) outputs, each in (-1, 1)."""
    out = _forward_normalized(params, _normalize(params, features))
    return float(out[0]), float(out[1])


def forward_batch(params: MlpParams, features: np.ndarray) -> np.ndarray:
    """(n, 2) outputs for an (n, n_features) batch."""
    return _forward_normalized(params, _normalize(params, features))


def score(node1: float, node2: float) -> float:
    """Fold the two output nodes into a goal score in [0, 1]."""
    if not (-1.0 <= node1 <= 1.0 and -1.0 <= node2 <= 1.0):
        raise ValueError(f"node outputs must be in [-1, 1], got ({node1}, {node2})")
    return (node1 - node2) / 4.0 + 0.5


def score_batch(params: MlpParams, features: np.ndarray) -> np.ndarray:
    out = forward_batch(params, features)
    return (out[:, 0] - out[:, 1]) / 4.0 + 0.5


@dataclass(eq=False)
class MlpGradients:
    weights: list[np.ndarray]
    biases: list[np.ndarray]


def _gradient_normalized(params: MlpParams, x: np.ndarray,
                         target: np.ndarray) -> MlpGradients:
    activations = [x]
    for w, b in zip(params.weights, params.biases):
        activations.append(np.tanh(activations[-1] @ w + b))
    out = activations[-1]
    # d/d_out of mean((out - t)^2), then back through tanh at each layer.
    delta = (2.0 / out.size) * (out - target) * (1.0 - out * out)
    grads_w: list[np.ndarray] = []
    grads_b: list[np.ndarray] = []
    for layer in reversed(range(len(params.weights))):
        grads_w.append(np.outer(activations[layer], delta))
        grads_b.append(delta)
        if layer > 0:
            a = activations[layer]
            delta = (delta @ params.weights[layer].T) * (1.0 - a * a)
    grads_w.reverse()
    grads_b.reverse()
    return MlpGradients(grads_w, grads_b)


def gradient(params: MlpParams, features: np.ndarray,
             target: Sequence[float]) -> MlpGradients:
    """Exact gradient of the per-example MSE w.r.t. every weight and bias."""
    t = np.asarray(target, dtype=float)
    if t.shape != (params.layer_sizes[-1],):
        raise ValueError(f"target must have {params.layer_sizes[-1]} components")
    if np.any(np.abs(t) > 1.0):
        raise ValueError("target components must be in [-1, 1]")
    return _gradient_normalized(params, _normalize(params, features), t)


def example_mse(params: MlpParams, features: np.ndarray,
                target: Sequence[float]) -> float:
    out = np.asarray(forward(params, features))
    return float(np.mean((out - np.asarray(target, float)) ** 2))


class StopReason(enum.Enum):
    MAX_EPOCHS = "MAX_EPOCHS"
    EARLY_STOP = "EARLY_STOP"


@dataclass
class TrainReport:
    epochs_run: int
    best_epoch: int
    train_mse_history: list[float]
    validation_mse_history: list[float]
    stop_reason: StopReason


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.001
    max_epochs: int = 10_000
    patience: int = 5
    init_half_range: float = 0.1
    seed: int = 0
    hidden_size: int = 5
    compare_to_previous: bool = False

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.max_epochs < 1 or self.patience < 1 or self.hidden_size < 1:
            raise ValueError("max_epochs, patience and hidden_size must be >= 1")
        if self.init_half_range <= 0:
            raise ValueError("init_half_range must be positive")


class EarlyStopping:
    """Consecutive-validation-failure tracker.

    A failure is an epoch whose validation MSE is >= the best seen so far
    (or >= the previous epoch's, with compare_to_previous). update()
    returns True when the epoch improved the best MSE.
    """

    def __init__(self, patience: int, compare_to_previous: bool = False) -> None:
        self.patience = patience
        self.compare_to_previous = compare_to_previous
        self.best_mse = math.inf
        self.best_epoch = 0
        self.epoch = 0
        self._previous = math.inf
        self._failures = 0

    def update(self, val_mse: float) -> bool:
        self.epoch += 1
        reference = self._previous if self.compare_to_previous else self.best_mse
        self._failures = self._failures + 1 if val_mse >= reference else 0
        improved = val_mse < self.best_mse
        if improved:
            self.best_mse = val_mse
            self.best_epoch = self.epoch
        self._previous = val_mse
        return improved

    @property
    def should_stop(self) -> bool:
        return self._failures >= self.patience


def _dataset_mse(params: MlpParams, x_normalized: np.ndarray,
                 targets: np.ndarray) -> float:
    out = _forward_normalized(params, x_normalized)
    return float(np.mean((out - targets) ** 2))


def train(train_features: np.ndarray, train_labels: Sequence[Label],
          val_features: np.ndarray, val_labels: Sequence[Label],
          config: TrainConfig = TrainConfig()) -> tuple[MlpParams, TrainReport]:
    """Train a tanh MLP with online backprop and early stopping.

    Deterministic for a given config.seed. The caller is expected to pass
    a class-balanced training set (see scenes.balance_by_replication).
    """
    x = np.asarray(train_features, dtype=float)
    xv = np.asarray(val_features, dtype=float)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ValueError("training set must be a non-empty 2D array")
    if xv.ndim != 2 or xv.shape[0] == 0:
        raise ValueError("validation set must be a non-empty 2D array")
    if xv.shape[1] != x.shape[1]:
        raise ValueError("train and validation feature widths differ")
    targets = targets_from_labels(train_labels)
    val_targets = targets_from_labels(val_labels)
    if len(targets) != len(x) or len(val_targets) != len(xv):
        raise ValueError("labels and features must have matching lengths")

    mean = x.mean(axis=0)
    std = x.std(axis=0)
    std = np.where(std < 1e-12, 1.0, std)  # constant features pass through
    rng = np.random.default_rng(config.seed)
    params = init_params((x.shape[1], config.hidden_size, 2), mean, std, rng,
                         config.init_half_range)

    xn = (x - mean) / std
    xvn = (xv - mean) / std
    stopper = EarlyStopping(config.patience, config.compare_to_previous)
    best_params = params.copy()
    train_history: list[float] = []
    val_history: list[float] = []
    stop_reason = StopReason.MAX_EPOCHS
    for _ in range(config.max_epochs):
        for i in rng.permutation(len(xn)):
            grads = _gradient_normalized(params, xn[i], targets[i])
            for w, gw in zip(params.weights, grads.weights):
                w -= config.learning_rate * gw
            for b, gb in zip(params.biases, grads.biases):
                b -= config.learning_rate * gb
        train_history.append(_dataset_mse(params, xn, targets))
        val_mse = _dataset_mse(params, xvn, val_targets)
        val_history.append(val_mse)
        if stopper.update(val_mse):
            best_params = params.copy()
        if stopper.should_stop:
            stop_reason = StopReason.EARLY_STOP
            break
    report = TrainReport(
        epochs_run=len(val_history),
        best_epoch=stopper.best_epoch,
        train_mse_history=train_history,
        validation_mse_history=val_history,
        stop_reason=stop_reason,
    )
    return best_params, report


def save_model(params: MlpParams, path: str | Path) -> None:
    """Versioned, self-describing JSON; floats round-trip exactly."""
    doc = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "layer_sizes": list(params.layer_sizes),
        "normalization": {
            "mean": params.norm_mean.tolist(),
            "std": params.norm_std.tolist(),
        },
        "weights": [w.tolist() for w in params.weights],
        "biases": [b.tolist() for b in params.biases],
    }
    Path(path).write_text(json.dumps(doc, indent=1), encoding="utf-8")


def load_model(path: str | Path) -> MlpParams:
    raw = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not a valid model file: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != MODEL_FORMAT:
        raise ValueError("not a recognized model file")
    if doc.get("version") != MODEL_VERSION:
        raise ValueError(f"unsupported model version {doc.get('version')!r}")
    norm = doc.get("normalization")
    if not isinstance(norm, dict) or "mean" not in norm or "std" not in norm:
        raise ValueError("model file missing its normalization block")
    try:
        return MlpParams(
            layer_sizes=tuple(doc["layer_sizes"]),
            weights=[np.asarray(w, dtype=float) for w in doc["weights"]],
            biases=[np.asarray(b, dtype=float) for b in doc["biases"]],
            norm_mean=np.asarray(norm["mean"], dtype=float),
            norm_std=np.asarray(norm["std"], dtype=float),
        )
    except KeyError as exc:
        raise ValueError(f"model file missing field {exc}") from None

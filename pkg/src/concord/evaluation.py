"""Model evaluation: accuracy, per-class precision/recall, confusion counts,
and the per-instance correctness vector that significance tests pair on."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, EmptyTestError, SpaceMismatchError
from .features import Dataset

N_FOLDS = 10  # deterministic round-robin partition of a fixed test set


def config_fingerprint(payload: dict) -> str:
    """Short stable hash of (lexicon versions, space, learner params, seed)."""
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


@dataclass
class EvalReport:
    accuracy: float
    precision: dict[str, float]
    recall: dict[str, float]
    confusion: dict[tuple[str, str], int]
    correctness: tuple[int, ...]
    fingerprint: str = ""
    predictions: tuple[str, ...] = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return len(self.correctness)


def evaluate(model, test: Dataset, fingerprint: str = "") -> EvalReport:
    """Deterministic evaluation; correctness order equals test order."""
    if len(test) == 0:
        raise EmptyTestError("test set is empty")
    if any(label is None for label in test.y):
        raise ArgumentError("test set has unlabeled instances")
    names = getattr(model, "feature_names_", None)
    if names is not None and tuple(names) != tuple(test.space.names):
        raise SpaceMismatchError(
            "model feature names do not match the test matrix columns"
        )
    predictions = model.predict(test.X)
    y = list(test.y)
    correctness = tuple(int(p == t) for p, t in zip(predictions, y))
    labels = sorted(set(y) | set(str(p) for p in predictions))
    confusion = {(t, p): 0 for t in labels for p in labels}
    for t, p in zip(y, predictions):
        confusion[(t, str(p))] += 1
    precision = {}
    recall = {}
    for c in labels:
        tp = confusion[(c, c)]
        predicted = sum(confusion[(t, c)] for t in labels)
        actual = sum(confusion[(c, p)] for p in labels)
        precision[c] = tp / predicted if predicted else 0.0
        recall[c] = tp / actual if actual else 0.0
    accuracy = float(np.mean(correctness))
    return EvalReport(
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        confusion=confusion,
        correctness=correctness,
        fingerprint=fingerprint,
        predictions=tuple(str(p) for p in predictions),
    )


def fold_accuracies(correctness, n_folds: int = N_FOLDS) -> list[float]:
    """Per-fold accuracies over the deterministic round-robin partition
    (instance i belongs to fold i mod n_folds); empty folds are skipped.

    Reports built on the same test set pair fold-by-fold.
    """
    correctness = list(correctness)
    if not correctness:
        raise EmptyTestError("cannot fold an empty correctness vector")
    folds: list[list[int]] = [[] for _ in range(n_folds)]
    for i, c in enumerate(correctness):
        folds[i % n_folds].append(c)
    return [sum(f) / len(f) for f in folds if f]

"""Gain-ratio feature ranking and top-k selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ArgumentError
from .splitting import encode_labels, evaluate_attribute


@dataclass(frozen=True)
class RankedAttribute:
    index: int
    name: str
    score: float
    threshold: float | None


@dataclass(frozen=True)
class FeatureRanking:
    """Attributes sorted by gain ratio descending; ties keep space order."""

    entries: tuple[RankedAttribute, ...]
    diagnostics: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def top(self, k: int) -> tuple[RankedAttribute, ...]:
        return self.entries[:k]


def rank_features(
    X,
    y,
    names=None,
    min_leaf: int = 1,
    gain_correction: bool = True,
) -> FeatureRanking:
    """Score every attribute; unsplittable attributes score 0 with a note."""
    X = np.asarray(X, dtype=np.float64)
    yi, classes = encode_labels(y)
    if names is None:
        names = [f"a{i}" for i in range(X.shape[1])]
    scored = []
    diagnostics = []
    for i in range(X.shape[1]):
        ev = evaluate_attribute(X[:, i], yi, max(len(classes), 1), min_leaf, gain_correction)
        if ev is None:
            scored.append(RankedAttribute(i, names[i], 0.0, None))
            diagnostics.append(f"attribute {names[i]!r} admits no split; scored 0")
        else:
            scored.append(RankedAttribute(i, names[i], ev.ratio, ev.threshold))
    scored.sort(key=lambda e: (-e.score, e.index))
    return FeatureRanking(tuple(scored), tuple(diagnostics))


def select_top_k(ranking: FeatureRanking, k: int) -> list[int]:
    """Indices of the k best-scored attributes, in original space order.

    Restrict a feature space/matrix with these indices to realize the
    reduced space.
    """
    if not 1 <= k <= len(ranking):
        raise ArgumentError(f"k must be in [1, {len(ranking)}], got {k}")
    return sorted(e.index for e in ranking.entries[:k])

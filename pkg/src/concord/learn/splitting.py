"""Entropy and numeric split evaluation (gain-ratio criterion).

Thresholds are midpoints of adjacent distinct sorted values; instances with
value <= threshold go left. Per attribute, the threshold maximizing raw
information gain is chosen (ties -> smallest threshold), then the multiple-
threshold correction -log2(candidates)/N is subtracted before the gain is
divided by split information.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ArgumentError, DegenerateDataError


def entropy(class_counts) -> float:
    """Shannon entropy in bits; 0*log(0) = 0."""
    counts = np.asarray(list(class_counts), dtype=np.float64)
    if counts.size == 0:
        raise ArgumentError("entropy needs at least one count")
    if np.any(counts < 0):
        raise ArgumentError("entropy needs non-negative counts")
    total = counts.sum()
    if total <= 0:
        raise ArgumentError("entropy of all-zero counts is undefined")
    nz = counts[counts > 0]
    p = nz / total
    return float(-(p * np.log2(p)).sum())


def _entropy_rows(counts: np.ndarray) -> np.ndarray:
    """Row-wise entropy of a (rows, classes) count matrix; zero rows -> 0."""
    totals = counts.sum(axis=1, keepdims=True)
    safe = np.where(totals > 0, totals, 1.0)
    p = counts / safe
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(counts > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return -terms.sum(axis=1)


@dataclass(frozen=True)
class SplitEval:
    ratio: float
    threshold: float
    gain: float       # after the candidate correction, if enabled
    raw_gain: float   # before the correction
    n_candidates: int


def evaluate_attribute(
    x: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    min_leaf: int = 1,
    gain_correction: bool = True,
) -> SplitEval | None:
    """Best binary split of one numeric attribute, or None if unsplittable.

    Candidates are midpoints between adjacent distinct sorted values whose
    left/right sides both hold at least ``min_leaf`` instances.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y)
    n = x.size
    if n < 2:
        return None
    order = np.argsort(x, kind="stable")
    xs = x[order]
    ys = y[order]
    boundaries = np.nonzero(xs[1:] > xs[:-1])[0]
    if boundaries.size == 0:
        return None  # constant attribute

    onehot = np.zeros((n, n_classes), dtype=np.float64)
    onehot[np.arange(n), ys] = 1.0
    cum = np.cumsum(onehot, axis=0)
    totals = cum[-1]

    left_n = boundaries + 1.0
    right_n = n - left_n
    ok = (left_n >= min_leaf) & (right_n >= min_leaf)
    if not ok.any():
        return None
    boundaries = boundaries[ok]
    left = cum[boundaries]
    right = totals[None, :] - left
    left_n = left_n[ok]
    right_n = right_n[ok]
    n_candidates = int(boundaries.size)

    parent_entropy = _entropy_rows(totals[None, :])[0]
    child = (left_n * _entropy_rows(left) + right_n * _entropy_rows(right)) / n
    gains = parent_entropy - child

    best = int(np.argmax(gains))  # first max -> smallest threshold on ties
    raw_gain = float(gains[best])
    b = boundaries[best]
    threshold = float((xs[b] + xs[b + 1]) / 2.0)
    gain = raw_gain
    if gain_correction:
        gain -= float(np.log2(n_candidates)) / n
    split_info = entropy([left_n[best], n - left_n[best]])
    ratio = gain / split_info if gain > 0 and split_info > 0 else 0.0
    return SplitEval(float(ratio), threshold, float(gain), raw_gain, n_candidates)


def gain_ratio(
    X,
    y,
    attribute: int,
    min_leaf: int = 1,
    gain_correction: bool = True,
    strict: bool = False,
) -> tuple[float, float | None]:
    """Gain ratio and best threshold of one attribute.

    A constant attribute yields (0.0, None), or DegenerateDataError when
    ``strict``.
    """
    X = np.asarray(X, dtype=np.float64)
    yi, classes = encode_labels(y)
    if strict and len(classes) < 2:
        raise DegenerateDataError("gain ratio needs both classes present")
    ev = evaluate_attribute(
        X[:, attribute], yi, max(len(classes), 1), min_leaf, gain_correction
    )
    if ev is None:
        if strict:
            raise DegenerateDataError(f"attribute {attribute} admits no split")
        return 0.0, None
    return ev.ratio, ev.threshold


def encode_labels(y) -> tuple[np.ndarray, np.ndarray]:
    """Map labels to 0..k-1 by sorted order; returns (codes, classes)."""
    classes, codes = np.unique(np.asarray(y), return_inverse=True)
    return codes.astype(np.intp), classes

"""C4.5-style decision tree on numeric attributes.

Recursive best-gain-ratio splitting with midpoint thresholds, pre-pruning by
``min_leaf``, and pessimistic error-based subtree-replacement pruning at a
configurable confidence. Ties break deterministically: equal ratios go to the
lower attribute index; tied leaf majorities go to the more frequent class in
the parent, then to the first class in sorted label order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from ..errors import ArgumentError, SpaceMismatchError
from ..stats import norm_ppf
from .splitting import evaluate_attribute


@dataclass
class TreeNodes:
    """Flat node storage; node 0 is the root."""

    is_leaf: list[bool] = field(default_factory=list)
    attr: list[int] = field(default_factory=list)
    threshold: list[float] = field(default_factory=list)
    left: list[int] = field(default_factory=list)
    right: list[int] = field(default_factory=list)
    class_index: list[int] = field(default_factory=list)
    dist: list[np.ndarray] = field(default_factory=list)

    def add(self) -> int:
        self.is_leaf.append(True)
        self.attr.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.class_index.append(0)
        self.dist.append(None)
        return len(self.is_leaf) - 1

    def __len__(self) -> int:
        return len(self.is_leaf)

    @property
    def n_leaves(self) -> int:
        return sum(self.is_leaf)


def _majority(counts: np.ndarray, parent_counts: np.ndarray | None) -> int:
    best = counts.max()
    tied = np.flatnonzero(counts == best)
    if tied.size > 1 and parent_counts is not None:
        pbest = parent_counts[tied].max()
        tied = tied[parent_counts[tied] == pbest]
    return int(tied[0])


def grow_tree(
    X: np.ndarray,
    yi: np.ndarray,
    n_classes: int,
    min_leaf: int = 2,
    gain_correction: bool = True,
    feature_sampler=None,
) -> TreeNodes:
    """Grow an unpruned tree; iterative so deep chains cannot overflow.

    ``feature_sampler()`` may return the candidate attribute indices for one
    split (the random-forest hook); None means all attributes.
    """
    nodes = TreeNodes()
    all_attrs = np.arange(X.shape[1])
    root = nodes.add()
    stack = [(root, np.arange(X.shape[0]), None)]
    while stack:
        node_id, idx, parent_counts = stack.pop()
        counts = np.bincount(yi[idx], minlength=n_classes).astype(np.float64)
        majority = _majority(counts, parent_counts)
        nodes.class_index[node_id] = majority
        nodes.dist[node_id] = counts
        if np.count_nonzero(counts) <= 1 or idx.size < 2 * min_leaf:
            continue  # stays a leaf
        attrs = all_attrs if feature_sampler is None else feature_sampler()
        best = None
        best_attr = -1
        for a in attrs:
            ev = evaluate_attribute(X[idx, a], yi[idx], n_classes, min_leaf, gain_correction)
            if ev is None or ev.ratio <= 0:
                continue
            if best is None or ev.ratio > best.ratio:
                best = ev
                best_attr = int(a)
        if best is None:
            continue  # no positive-gain split
        mask = X[idx, best_attr] <= best.threshold
        left_id = nodes.add()
        right_id = nodes.add()
        nodes.is_leaf[node_id] = False
        nodes.attr[node_id] = best_attr
        nodes.threshold[node_id] = best.threshold
        nodes.left[node_id] = left_id
        nodes.right[node_id] = right_id
        stack.append((left_id, idx[mask], counts))
        stack.append((right_id, idx[~mask], counts))
    return nodes


def added_errors(n: float, e: float, confidence: float) -> float:
    """Pessimistic error mass added to ``e`` observed errors out of ``n``.

    Upper confidence bound of the binomial error rate with continuity
    correction, with the small-count special cases of the C4.5 lineage.
    """
    if n <= 0 or confidence >= 1.0:
        return 0.0
    if e < 1.0:
        base = n * (1.0 - confidence ** (1.0 / n))
        if e == 0.0:
            return base
        return base + e * (added_errors(n, 1.0, confidence) - base)
    if e + 0.5 >= n:
        return max(n - e, 0.0)
    z = norm_ppf(1.0 - confidence)
    f = (e + 0.5) / n
    r = (
        f
        + (z * z) / (2.0 * n)
        + z * np.sqrt(f / n - f * f / n + (z * z) / (4.0 * n * n))
    ) / (1.0 + (z * z) / n)
    return r * n - e


def prune_subtree_replacement(
    nodes: TreeNodes,
    X: np.ndarray,
    yi: np.ndarray,
    n_classes: int,
    confidence: float,
) -> TreeNodes:
    """Bottom-up subtree replacement: collapse a split whenever the
    pessimistic error of a majority leaf is no worse than its subtree's."""

    routed: dict[int, np.ndarray] = {0: np.arange(X.shape[0])}
    order: list[int] = []
    stack = [0]
    while stack:
        nid = stack.pop()
        order.append(nid)
        if not nodes.is_leaf[nid]:
            idx = routed[nid]
            mask = X[idx, nodes.attr[nid]] <= nodes.threshold[nid]
            routed[nodes.left[nid]] = idx[mask]
            routed[nodes.right[nid]] = idx[~mask]
            stack.append(nodes.left[nid])
            stack.append(nodes.right[nid])

    estimated: dict[int, float] = {}
    for nid in reversed(order):  # children before parents
        idx = routed[nid]
        counts = np.bincount(yi[idx], minlength=n_classes).astype(np.float64)
        n = float(idx.size)
        leaf_err = n - (counts.max() if n else 0.0)
        leaf_est = leaf_err + added_errors(n, leaf_err, confidence)
        if nodes.is_leaf[nid]:
            estimated[nid] = leaf_est
            continue
        subtree_est = estimated[nodes.left[nid]] + estimated[nodes.right[nid]]
        if leaf_est <= subtree_est + 0.1:
            nodes.is_leaf[nid] = True
            nodes.attr[nid] = -1
            nodes.left[nid] = -1
            nodes.right[nid] = -1
            # class/dist were set at growth time and stay valid
            estimated[nid] = leaf_est
        else:
            estimated[nid] = subtree_est
    return _compact(nodes)


def _compact(nodes: TreeNodes) -> TreeNodes:
    """Drop nodes orphaned by pruning and renumber from the root."""
    out = TreeNodes()
    mapping: dict[int, int] = {}
    stack = [0]
    topo: list[int] = []
    while stack:
        nid = stack.pop()
        mapping[nid] = out.add()
        topo.append(nid)
        if not nodes.is_leaf[nid]:
            stack.append(nodes.right[nid])
            stack.append(nodes.left[nid])
    for nid in topo:
        new = mapping[nid]
        out.is_leaf[new] = nodes.is_leaf[nid]
        out.attr[new] = nodes.attr[nid]
        out.threshold[new] = nodes.threshold[nid]
        out.left[new] = mapping[nodes.left[nid]] if not nodes.is_leaf[nid] else -1
        out.right[new] = mapping[nodes.right[nid]] if not nodes.is_leaf[nid] else -1
        out.class_index[new] = nodes.class_index[nid]
        out.dist[new] = nodes.dist[nid]
    return out


def apply_tree(nodes: TreeNodes, X: np.ndarray) -> np.ndarray:
    """Leaf index per row; a value exactly at a threshold routes left."""
    out = np.empty(X.shape[0], dtype=np.intp)
    for r in range(X.shape[0]):
        nid = 0
        while not nodes.is_leaf[nid]:
            if X[r, nodes.attr[nid]] <= nodes.threshold[nid]:
                nid = nodes.left[nid]
            else:
                nid = nodes.right[nid]
        out[r] = nid
    return out


class GainRatioTreeClassifier(ClassifierMixin, BaseEstimator):
    """sklearn-style estimator around :func:`grow_tree` and pruning.

    Defaults follow the historical C4.5/J48 settings: confidence 0.25,
    min_leaf 2, subtree-replacement pruning on.
    """

    def __init__(self, confidence=0.25, min_leaf=2, prune=True, gain_correction=True):
        self.confidence = confidence
        self.min_leaf = min_leaf
        self.prune = prune
        self.gain_correction = gain_correction

    def fit(self, X, y):
        if not 0.0 < self.confidence <= 1.0:
            raise ArgumentError(f"confidence must be in (0, 1], got {self.confidence}")
        if int(self.min_leaf) < 1:
            raise ArgumentError(f"min_leaf must be >= 1, got {self.min_leaf}")
        X, y = check_X_y(X, y, dtype=np.float64)
        self.classes_, yi = np.unique(y, return_inverse=True)
        yi = yi.astype(np.intp)
        self.n_features_in_ = X.shape[1]
        nodes = grow_tree(
            X, yi, len(self.classes_), int(self.min_leaf), bool(self.gain_correction)
        )
        if self.prune:
            nodes = prune_subtree_replacement(
                nodes, X, yi, len(self.classes_), float(self.confidence)
            )
        self.nodes_ = nodes
        return self

    def _check_X(self, X) -> np.ndarray:
        check_is_fitted(self, "nodes_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise SpaceMismatchError(
                f"model expects {self.n_features_in_} attributes, got {X.shape[1]}"
            )
        return X

    def predict(self, X):
        X = self._check_X(X)
        leaves = apply_tree(self.nodes_, X)
        return self.classes_[[self.nodes_.class_index[i] for i in leaves]]

    def predict_proba(self, X):
        X = self._check_X(X)
        leaves = apply_tree(self.nodes_, X)
        out = np.zeros((X.shape[0], len(self.classes_)))
        for r, nid in enumerate(leaves):
            dist = self.nodes_.dist[nid]
            total = dist.sum()
            out[r] = dist / total if total > 0 else 1.0 / len(self.classes_)
        return out

    @property
    def n_nodes_(self) -> int:
        return len(self.nodes_)

    @property
    def n_leaves_(self) -> int:
        return self.nodes_.n_leaves

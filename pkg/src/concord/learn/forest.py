"""Bagged forest of unpruned gain-ratio trees with per-split feature
subsampling.

Each tree consumes only its own RNG derived from (seed, tree index), so
training is reproducible and independent of the degree of parallelism.
"""

from __future__ import annotations

import math

import numpy as np
from joblib import Parallel, delayed
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from ..errors import ArgumentError, SpaceMismatchError
from .tree import TreeNodes, apply_tree, grow_tree

_SEED_MASK = (1 << 63) - 1


def default_features_per_split(n_attributes: int) -> int:
    return int(math.floor(math.log2(n_attributes))) + 1 if n_attributes > 1 else 1


def _tree_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng((int(seed) & _SEED_MASK, int(index)))


def _build_one(X, yi, n_classes, seed, index, fps, bootstrap, gain_correction):
    rng = _tree_rng(seed, index)
    n, m = X.shape
    idx = rng.integers(0, n, size=n) if bootstrap else np.arange(n)
    if fps >= m:
        sampler = None  # all attributes, same order/ties as a plain tree
    else:
        def sampler():
            return np.sort(rng.choice(m, size=fps, replace=False))
    return grow_tree(
        X[idx], yi[idx], n_classes, min_leaf=1,
        gain_correction=gain_correction, feature_sampler=sampler,
    )


class BaggedForestClassifier(ClassifierMixin, BaseEstimator):
    """Bootstrap-aggregated gain-ratio trees; unweighted majority vote.

    Defaults track the era's toolkit: 10 trees, floor(log2(M))+1 candidate
    attributes per split, bootstrap on. Vote ties go to the first class in
    sorted label order.
    """

    def __init__(self, n_trees=10, features_per_split=None, bootstrap=True,
                 seed=0, gain_correction=True, n_jobs=None):
        self.n_trees = n_trees
        self.features_per_split = features_per_split
        self.bootstrap = bootstrap
        self.seed = seed
        self.gain_correction = gain_correction
        self.n_jobs = n_jobs

    def fit(self, X, y):
        if int(self.n_trees) < 1:
            raise ArgumentError(f"n_trees must be >= 1, got {self.n_trees}")
        X, y = check_X_y(X, y, dtype=np.float64)
        self.classes_, yi = np.unique(y, return_inverse=True)
        yi = yi.astype(np.intp)
        self.n_features_in_ = X.shape[1]
        m = X.shape[1]
        fps = self.features_per_split
        fps = default_features_per_split(m) if fps is None else int(fps)
        if not 1 <= fps <= m:
            raise ArgumentError(
                f"features_per_split must be in [1, {m}], got {fps}"
            )
        self.features_per_split_ = fps
        k = len(self.classes_)
        args = [
            (X, yi, k, self.seed, t, fps, bool(self.bootstrap), bool(self.gain_correction))
            for t in range(int(self.n_trees))
        ]
        if self.n_jobs in (None, 1):
            self.trees_ = [_build_one(*a) for a in args]
        else:
            self.trees_ = Parallel(n_jobs=self.n_jobs)(
                delayed(_build_one)(*a) for a in args
            )
        self.tree_seeds_ = [(int(self.seed) & _SEED_MASK, t) for t in range(int(self.n_trees))]
        return self

    def _check_X(self, X) -> np.ndarray:
        check_is_fitted(self, "trees_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise SpaceMismatchError(
                f"model expects {self.n_features_in_} attributes, got {X.shape[1]}"
            )
        return X

    def _votes(self, X: np.ndarray) -> np.ndarray:
        votes = np.zeros((X.shape[0], len(self.classes_)))
        for tree in self.trees_:
            leaves = apply_tree(tree, X)
            for r, nid in enumerate(leaves):
                votes[r, tree.class_index[nid]] += 1
        return votes

    def predict(self, X):
        X = self._check_X(X)
        votes = self._votes(X)
        return self.classes_[np.argmax(votes, axis=1)]  # first max wins ties

    def predict_proba(self, X):
        X = self._check_X(X)
        votes = self._votes(X)
        return votes / votes.sum(axis=1, keepdims=True)

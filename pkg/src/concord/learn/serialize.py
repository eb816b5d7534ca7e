"""Versioned model serialization (JSON), round-trip stable.

Schema ``concord-model`` version 1: learner kind, constructor params, sorted
class labels, optional feature names, and flat node lists (one per tree).
Dumps are canonical (sorted keys, compact separators) so identical models
serialize to identical bytes.
"""

from __future__ import annotations

import json

import numpy as np

from ..errors import ArgumentError, SpaceMismatchError
from .forest import BaggedForestClassifier
from .tree import GainRatioTreeClassifier, TreeNodes

MODEL_FORMAT = "concord-model"
MODEL_VERSION = 1


def _nodes_to_list(nodes: TreeNodes) -> list:
    out = []
    for i in range(len(nodes)):
        if nodes.is_leaf[i]:
            out.append(
                {"leaf": True, "class": nodes.class_index[i],
                 "dist": [float(v) for v in nodes.dist[i]]}
            )
        else:
            out.append(
                {"leaf": False, "attr": nodes.attr[i],
                 "thr": float(nodes.threshold[i]),
                 "left": nodes.left[i], "right": nodes.right[i],
                 "class": nodes.class_index[i],
                 "dist": [float(v) for v in nodes.dist[i]]}
            )
    return out


def _nodes_from_list(items: list) -> TreeNodes:
    nodes = TreeNodes()
    for item in items:
        i = nodes.add()
        nodes.class_index[i] = int(item["class"])
        nodes.dist[i] = np.asarray(item["dist"], dtype=np.float64)
        if not item["leaf"]:
            nodes.is_leaf[i] = False
            nodes.attr[i] = int(item["attr"])
            nodes.threshold[i] = float(item["thr"])
            nodes.left[i] = int(item["left"])
            nodes.right[i] = int(item["right"])
    return nodes


def model_to_dict(model, feature_names=None) -> dict:
    doc = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "classes": [str(c) for c in model.classes_],
        "n_features": int(model.n_features_in_),
        "params": model.get_params(),
    }
    if feature_names is not None:
        doc["feature_names"] = list(feature_names)
    if isinstance(model, GainRatioTreeClassifier):
        doc["learner"] = "tree"
        doc["nodes"] = _nodes_to_list(model.nodes_)
    elif isinstance(model, BaggedForestClassifier):
        doc["learner"] = "forest"
        doc["trees"] = [
            {"seed": list(seed), "nodes": _nodes_to_list(t)}
            for seed, t in zip(model.tree_seeds_, model.trees_)
        ]
    else:
        raise ArgumentError(f"cannot serialize {type(model).__name__}")
    return doc


def model_from_dict(doc: dict):
    if doc.get("format") != MODEL_FORMAT:
        raise SpaceMismatchError("not a concord model file")
    if doc.get("version") != MODEL_VERSION:
        raise SpaceMismatchError(f"unsupported model version {doc.get('version')}")
    classes = np.asarray(doc["classes"])
    if doc["learner"] == "tree":
        model = GainRatioTreeClassifier(**doc["params"])
        model.nodes_ = _nodes_from_list(doc["nodes"])
    elif doc["learner"] == "forest":
        model = BaggedForestClassifier(**doc["params"])
        model.trees_ = [_nodes_from_list(t["nodes"]) for t in doc["trees"]]
        model.tree_seeds_ = [tuple(t["seed"]) for t in doc["trees"]]
    else:
        raise SpaceMismatchError(f"unknown learner {doc['learner']!r}")
    model.classes_ = classes
    model.n_features_in_ = int(doc["n_features"])
    model.feature_names_ = doc.get("feature_names")
    return model


def dumps_model(model, feature_names=None) -> str:
    return json.dumps(
        model_to_dict(model, feature_names), sort_keys=True, separators=(",", ":")
    ) + "\n"


def save_model(model, dest, feature_names=None) -> None:
    text = dumps_model(model, feature_names)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)


def load_model(source):
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    return model_from_dict(json.loads(text))

"""Information-theoretic scoring, gain-ratio trees, and bagged forests."""

from .forest import BaggedForestClassifier, default_features_per_split  # noqa: F401
from .ranking import FeatureRanking, RankedAttribute, rank_features, select_top_k  # noqa: F401
from .serialize import dumps_model, load_model, model_from_dict, model_to_dict, save_model  # noqa: F401
from .splitting import SplitEval, encode_labels, entropy, evaluate_attribute, gain_ratio  # noqa: F401
from .tree import GainRatioTreeClassifier, added_errors, apply_tree, grow_tree  # noqa: F401

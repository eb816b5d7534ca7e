"""concord: topic-independent agreement/disagreement classification for dialogue."""

__version__ = "0.1.0"

from .corpus import (  # noqa: F401
    AGREEMENT,
    DISAGREEMENT,
    AnnotatedPair,
    DatasetSplit,
    LabeledPair,
    Post,
    corpus_stats,
    filter_by_threshold,
    load_pairs,
    split_by_topic,
    write_pairs,
)
from .features import (  # noqa: F401
    Dataset,
    DialogueFeaturizer,
    FeatureSpace,
    FeatureVector,
    LexiconSet,
    build_space,
    build_vocabulary,
    featurize,
    featurize_all,
)
from .learn import (  # noqa: F401
    BaggedForestClassifier,
    GainRatioTreeClassifier,
    entropy,
    gain_ratio,
    rank_features,
    select_top_k,
)
from .evaluation import EvalReport, evaluate  # noqa: F401
from .stats import paired_t_test  # noqa: F401
from .synth import SyntheticSpec, generate_synthetic  # noqa: F401

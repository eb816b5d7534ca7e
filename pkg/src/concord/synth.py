"""Deterministic synthetic corpus generation.

A desk-scale stand-in for a real forum corpus: topics get disjoint nonsense
content vocabularies, every response gets label-consistent cue plantings
drawn from the shipped lexicons, and a single "decoy" content token is
correlated with one label on the training topics and with the opposite label
on the test topics. Content-word classifiers latch onto the decoy and get
inverted at test time; the lexicon-driven features never see it.

Label recoverability is guaranteed by construction: a response contains a
denial ngram if and only if it is a disagreement, so the spec must plant
denial cues with probability 1 for disagreements and 0 for agreements.

Spec file: INI, see data/synthetic_default.spec for the documented schema.
"""

from __future__ import annotations

import configparser
import random
from dataclasses import dataclass, field

from . import lexicons as lx
from .corpus import AnnotatedPair, Post
from .errors import ArgumentError, ConfigError
from .features import LexiconSet

CUE_FAMILIES = (
    "denial",
    "agreement",
    "hedge",
    "question",
    "exclaim",
    "positive",
    "negative",
    "extra_sentence",
)
_LABEL_KEYS = ("agreement", "disagreement")

_AGREEMENT_TEMPLATES = {
    "agree": "i {kw} with this",
    "agreed": "{kw} on all counts",
    "correct": "that is {kw}",
    "right": "quite {kw}",
    "accepted": "point {kw} here",
    "thanks": "{kw} for this",
    "good": "{kw} point",
    "acknowledge": "i {kw} that",
}


@dataclass(frozen=True)
class DecoySpec:
    token: str
    train_correlation: float
    test_correlation: float


@dataclass(frozen=True)
class SyntheticSpec:
    version: str
    train_topics: tuple[str, ...]
    test_topics: tuple[str, ...]
    pairs_per_train_topic: int
    pairs_per_test_topic: int
    words_per_topic: int
    # probability that a response of the given label carries >= 1 planting
    # of the family: cues[(family, label)] -> p
    cues: dict[tuple[str, str], float] = field(default_factory=dict)
    decoy: DecoySpec = DecoySpec("zorblat", 0.9, -0.9)

    def cue_prob(self, family: str, label: str) -> float:
        return self.cues.get((family, label), 0.0)

    @classmethod
    def from_ini(cls, source) -> "SyntheticSpec":
        parser = configparser.ConfigParser()
        if hasattr(source, "read"):
            text = source.read()
            if isinstance(text, bytes):
                text = text.decode("utf-8")
            parser.read_string(text)
        else:
            with open(source, "r", encoding="utf-8") as fh:
                parser.read_string(fh.read())
        try:
            corpus = parser["corpus"]
            vocab = parser["vocab"]
            cue_section = parser["cues"]
            decoy_section = parser["decoy"]
        except KeyError as exc:
            raise ConfigError(f"synthetic spec is missing section {exc}") from exc
        cues: dict[tuple[str, str], float] = {}
        for key, value in cue_section.items():
            family, _, label = key.rpartition("_")
            if label not in _LABEL_KEYS or family not in CUE_FAMILIES:
                raise ConfigError(
                    f"unknown cue key {key!r}; expected <family>_<label> with "
                    f"family in {CUE_FAMILIES} and label in {_LABEL_KEYS}"
                )
            cues[(family, label)] = float(value)
        spec = cls(
            version=corpus.get("version", "0"),
            train_topics=tuple(corpus.get("train_topics", "").split()),
            test_topics=tuple(corpus.get("test_topics", "").split()),
            pairs_per_train_topic=corpus.getint("pairs_per_train_topic"),
            pairs_per_test_topic=corpus.getint("pairs_per_test_topic"),
            words_per_topic=vocab.getint("words_per_topic"),
            cues=cues,
            decoy=DecoySpec(
                token=decoy_section.get("token", "zorblat").strip(),
                train_correlation=decoy_section.getfloat("train_correlation"),
                test_correlation=decoy_section.getfloat("test_correlation"),
            ),
        )
        spec.validate()
        return spec

    @classmethod
    def default(cls) -> "SyntheticSpec":
        import importlib.resources

        path = importlib.resources.files("concord") / "data" / "synthetic_default.spec"
        with path.open("r", encoding="utf-8") as fh:
            return cls.from_ini(fh)

    def validate(self) -> None:
        if not self.train_topics or not self.test_topics:
            raise ArgumentError("spec needs at least one train and one test topic")
        overlap = set(self.train_topics) & set(self.test_topics)
        if overlap:
            raise ArgumentError(f"train/test topics overlap: {sorted(overlap)}")
        if self.words_per_topic < 1:
            raise ArgumentError("empty topic vocabulary (words_per_topic < 1)")
        if self.pairs_per_train_topic < 2 or self.pairs_per_test_topic < 2:
            raise ArgumentError(
                "each topic needs at least 2 pairs so both labels occur "
                "(zero-probability label)"
            )
        for key, p in self.cues.items():
            if not 0.0 <= p <= 1.0:
                raise ArgumentError(f"cue probability {key} = {p} outside [0, 1]")
        if self.cue_prob("denial", "disagreement") != 1.0 or self.cue_prob(
            "denial", "agreement"
        ) != 0.0:
            raise ArgumentError(
                "labels must be recoverable by construction: require "
                "denial_disagreement = 1.0 and denial_agreement = 0.0"
            )
        for rho in (self.decoy.train_correlation, self.decoy.test_correlation):
            if not -1.0 <= rho <= 1.0:
                raise ArgumentError(f"decoy correlation {rho} outside [-1, 1]")
        if not self.decoy.token:
            raise ArgumentError("decoy token must be non-empty")


def topic_vocabulary(topic: str, size: int) -> list[str]:
    """Per-topic content words; prefixing by topic keeps topics disjoint."""
    return [f"{topic}{i:03d}" for i in range(size)]


def _decoy_presence_prob(spec: SyntheticSpec, label: str, is_train: bool) -> float:
    # For balanced labels, P(decoy|agr) = (1+rho)/2 and P(decoy|dis) = (1-rho)/2
    # give an empirical phi correlation of rho with the agreement label.
    rho = spec.decoy.train_correlation if is_train else spec.decoy.test_correlation
    return (1.0 + rho) / 2.0 if label == "agreement" else (1.0 - rho) / 2.0


class _Planter:
    """Samples concrete plantings from the shipped lexicons."""

    def __init__(self, lexicons: LexiconSet):
        self.denial = sorted(lexicons.denial_expanded.ngrams)
        self.hedges = sorted(lexicons.hedges_expanded.ngrams)
        self.agreement_keywords = sorted(
            p.slots[0][1]
            for p in lexicons.agreement.patterns
            if len(p.slots) == 1 and p.slots[0][0] == lx.LITERAL
        )
        self.positive = lexicons.polarity.words(lx.STRONG, lx.POSITIVE)
        self.negative = lexicons.polarity.words(lx.STRONG, lx.NEGATIVE)
        if not (self.denial and self.agreement_keywords):
            raise ConfigError("shipped lexicons are empty; cannot plant cues")

    def denial_sentence(self, rng: random.Random) -> str:
        return " ".join(rng.choice(self.denial))

    def agreement_sentence(self, rng: random.Random) -> str:
        kw = rng.choice(self.agreement_keywords)
        return _AGREEMENT_TEMPLATES.get(kw, "surely {kw}").format(kw=kw)

    def hedge_sentence(self, rng: random.Random, filler: str) -> str:
        return f"{' '.join(rng.choice(self.hedges))} {filler}"


def _content_sentence(rng: random.Random, vocab: list[str], low=6, high=14) -> list[str]:
    return [rng.choice(vocab) for _ in range(rng.randint(low, high))]


def _finish(words: list[str], mark: str = ".") -> str:
    text = " ".join(words)
    return text + mark


def generate_synthetic(seed: int, spec: SyntheticSpec) -> list[AnnotatedPair]:
    """Pure function of (seed, spec); emits AnnotatedPairs at +/-3.0."""
    spec.validate()
    lexicons = LexiconSet.load()
    if spec.decoy.token.lower() in lexicons.all_tokens():
        raise ArgumentError(
            f"decoy token {spec.decoy.token!r} collides with a lexicon token"
        )
    planter = _Planter(lexicons)
    rng = random.Random(seed)
    pairs: list[AnnotatedPair] = []

    topics = [(t, True) for t in spec.train_topics] + [(t, False) for t in spec.test_topics]
    for topic, is_train in topics:
        vocab = topic_vocabulary(topic, spec.words_per_topic)
        total = spec.pairs_per_train_topic if is_train else spec.pairs_per_test_topic
        agree_n = total // 2
        plan = [("agreement", i) for i in range(agree_n)] + [
            ("disagreement", i) for i in range(total - agree_n)
        ]
        for label, k in plan:
            pairs.append(
                _make_pair(rng, spec, planter, topic, is_train, label, k, vocab)
            )
    return pairs


def _make_pair(rng, spec, planter, topic, is_train, label, k, vocab) -> AnnotatedPair:
    p = lambda family: rng.random() < spec.cue_prob(family, label)  # noqa: E731

    sentences: list[str] = []
    if label == "disagreement":  # the label-defining marker (probability 1.0)
        if p("denial"):
            sentences.append(_finish([planter.denial_sentence(rng)]))
    elif p("denial"):  # validated to probability 0.0
        sentences.append(_finish([planter.denial_sentence(rng)]))

    if label == "disagreement" and p("agreement"):
        # guarded contaminant: negation keeps the agreement extractor silent
        kw = rng.choice(["correct", "right"])
        sentences.append(_finish([f"that is not {kw}"]))
    elif label == "agreement" and p("agreement"):
        sentences.append(_finish([planter.agreement_sentence(rng)]))

    if p("hedge"):
        sentences.append(_finish([planter.hedge_sentence(rng, rng.choice(vocab))]))

    content = _content_sentence(rng, vocab)
    if rng.random() < _decoy_presence_prob(spec, label, is_train):
        content.insert(rng.randrange(len(content) + 1), spec.decoy.token)
    if p("positive") and planter.positive:
        content.insert(rng.randrange(len(content) + 1), rng.choice(planter.positive))
    if p("negative") and planter.negative:
        content.insert(rng.randrange(len(content) + 1), rng.choice(planter.negative))
    sentences.append(_finish(content))

    if p("extra_sentence"):
        sentences.append(_finish(_content_sentence(rng, vocab)))
    if p("question"):
        marks = "?" * (rng.randint(1, 3) if label == "disagreement" else 1)
        sentences.append(_finish(_content_sentence(rng, vocab, 2, 5), marks))
    if p("exclaim"):
        sentences.append(_finish(_content_sentence(rng, vocab, 2, 4), "!"))

    rng.shuffle(sentences)
    response_text = " ".join(s.capitalize() for s in sentences)

    prior_words = _content_sentence(rng, vocab)
    prior_text = _finish(prior_words, "?" if rng.random() < 0.4 else ".").capitalize()

    short = "agr" if label == "agreement" else "dis"
    return AnnotatedPair(
        pair_id=f"{topic}-{short}-{k:05d}",
        topic=topic,
        prior=Post(f"{topic}-{short}-{k:05d}/prior", prior_text),
        response=Post(f"{topic}-{short}-{k:05d}/response", response_text),
        mean_agreement=3.0 if label == "agreement" else -3.0,
    )

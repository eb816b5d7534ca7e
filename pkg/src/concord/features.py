"""Turn dialogue pairs into feature vectors.

Seven theoretically motivated (TM) feature groups plus an ngram baseline:

* agreement  — guarded agreement-keyword count (1 attribute)
* cue        — per-entry cue counts, incl. the cogmech category (18)
* denial     — total denial-ngram matches (1)
* hedge      — total hedge matches (1)
* duration   — characters, words, sentences (3)
* polarity   — strong-subjective positive/negative sums or means (2)
* punctuation— literal ? and ! character counts (2)
* ngram      — counts over a train-built vocabulary (variable)

All features are computed from the response post; prior-post extraction of
the TM groups can be switched on and appends a ``prior_``-prefixed block.
"""

from __future__ import annotations

import importlib.resources
import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from . import lexicons as lx
from .corpus import AnnotatedPair, LabeledPair
from .errors import ArgumentError, ConfigError, SpaceMismatchError
from .textproc import (
    PUNCT,
    WITH_PUNCT,
    WORD,
    TokenList,
    ngram_form,
    ngrams,
    split_sentences,
    tokenize,
)

# group names
G_AGREEMENT = "agreement"
G_CUE = "cue"
G_DENIAL = "denial"
G_HEDGE = "hedge"
G_DURATION = "duration"
G_POLARITY = "polarity"
G_PUNCTUATION = "punctuation"
G_NGRAM = "ngram"

TM_GROUPS = (
    G_AGREEMENT,
    G_CUE,
    G_DENIAL,
    G_HEDGE,
    G_DURATION,
    G_POLARITY,
    G_PUNCTUATION,
)
ALL_GROUPS = TM_GROUPS + (G_NGRAM,)

# attribute kinds
COUNT = "count"
LENGTH = "length"
SUM = "sum"
MEAN = "mean"

POLARITY_SUM = "sum"
POLARITY_MEAN = "mean"

_PREFIX_TO_GROUP = {
    "agr": G_AGREEMENT,
    "cue": G_CUE,
    "den": G_DENIAL,
    "hdg": G_HEDGE,
    "dur": G_DURATION,
    "pol": G_POLARITY,
    "pun": G_PUNCTUATION,
    "ng1": G_NGRAM,
    "ng2": G_NGRAM,
}
_GROUP_TO_KIND = {
    G_AGREEMENT: COUNT,
    G_CUE: COUNT,
    G_DENIAL: COUNT,
    G_HEDGE: COUNT,
    G_DURATION: LENGTH,
    G_POLARITY: SUM,
    G_PUNCTUATION: COUNT,
    G_NGRAM: COUNT,
}

AGREEMENT_NEG_WINDOW = 3  # tokens before a keyword scanned for negation


# ---------------------------------------------------------------------------
# lexicon bundle


@dataclass
class LexiconSet:
    """All loaded lexicons, with precomputed match indexes."""

    agreement: lx.PatternLexicon
    cues: lx.PatternLexicon
    cogmech: lx.PatternLexicon
    hedges: lx.PatternLexicon
    denial: lx.PatternLexicon
    polarity: lx.PolarityLexicon
    denial_expanded: lx.ExpandedLexicon = field(init=False)
    hedges_expanded: lx.ExpandedLexicon = field(init=False)
    cogmech_words: frozenset[str] = field(init=False)
    cue_entries: tuple[tuple[str, tuple[tuple[str, ...], ...]], ...] = field(init=False)

    def __post_init__(self):
        if "neg" not in self.agreement.classes or "contrast" not in self.agreement.classes:
            raise ConfigError(
                "agreement lexicon must declare 'neg' and 'contrast' classes"
            )
        self.denial_expanded = lx.expand_generalizations(self.denial)
        self.hedges_expanded = lx.expand_generalizations(self.hedges)
        self.cogmech_words = frozenset(
            toks[0]
            for toks in lx.expand_generalizations(self.cogmech).ngrams
            if len(toks) == 1
        )
        entries = []
        for pattern in self.cues.patterns:
            name = pattern.text
            if name == "cogmech":
                entries.append((name, ()))  # resolved against cogmech_words
                continue
            choices = [
                (tok,) if kind == lx.LITERAL else self.cues.classes[tok]
                for kind, tok in pattern.slots
            ]
            entries.append((name, tuple(itertools.product(*choices))))
        self.cue_entries = tuple(entries)

    @classmethod
    def load(cls, lexicon_dir=None, mpqa_path=None) -> "LexiconSet":
        """Load lexicons from ``lexicon_dir`` (default: the shipped set)."""

        def _open(name):
            if lexicon_dir is not None:
                return open(f"{lexicon_dir}/{name}", "r", encoding="utf-8")
            return (importlib.resources.files("concord") / "data" / name).open(
                "r", encoding="utf-8"
            )

        with _open("agreement.lex") as fh:
            agreement = lx.load_lexicon(fh, "agreement")
        with _open("cues.lex") as fh:
            cues = lx.load_lexicon(fh, "cue")
        with _open("cogmech.lex") as fh:
            cogmech = lx.load_lexicon(fh, "cogmech")
        with _open("hedges.lex") as fh:
            hedges = lx.load_lexicon(fh, "hedge")
        with _open("denial.lex") as fh:
            denial = lx.load_lexicon(fh, "denial")
        if mpqa_path is not None:
            with open(mpqa_path, "r", encoding="utf-8") as fh:
                polarity = lx.load_mpqa(fh)
        else:
            with _open("subjectivity.tff") as fh:
                polarity = lx.load_mpqa(fh)
        return cls(agreement, cues, cogmech, hedges, denial, polarity)

    @property
    def versions(self) -> dict[str, str]:
        return {
            "agreement": self.agreement.version,
            "cue": self.cues.version,
            "cogmech": self.cogmech.version,
            "hedge": self.hedges.version,
            "denial": self.denial.version,
            "polarity": self.polarity.version,
        }

    def all_tokens(self) -> frozenset[str]:
        """Every canonical token any lexicon could match (for tests/tools)."""
        toks: set[str] = set()
        for lexicon in (self.agreement, self.cues, self.cogmech, self.hedges, self.denial):
            for members in lexicon.classes.values():
                toks.update(members)
            for pattern in lexicon.patterns:
                for kind, tok in pattern.slots:
                    if kind == lx.LITERAL:
                        toks.add(tok)
        toks.update(self.polarity.entries)
        return frozenset(toks)


# ---------------------------------------------------------------------------
# sentence-scoped matching helpers


def _sentence_forms(tl: TokenList) -> list[tuple[str, ...]]:
    return [
        tuple(t.alt for t in tl.tokens[start:end])
        for start, end in split_sentences(tl)
    ]


def count_concrete(tl: TokenList, tokens: tuple[str, ...]) -> int:
    """Occurrences of one concrete ngram, sentence-scoped, per start position."""
    n = len(tokens)
    total = 0
    for forms in _sentence_forms(tl):
        for i in range(len(forms) - n + 1):
            if forms[i : i + n] == tokens:
                total += 1
    return total


def count_expanded(tl: TokenList, expanded: lx.ExpandedLexicon) -> int:
    """Total matches over all concrete ngrams of an expanded lexicon.

    Distinct patterns matching at one position each count; one pattern counts
    once per start position.
    """
    total = 0
    by_first = expanded.by_first
    for forms in _sentence_forms(tl):
        m = len(forms)
        for i in range(m):
            for patt in by_first.get(forms[i], ()):
                if forms[i : i + len(patt)] == patt:
                    total += 1
    return total


# ---------------------------------------------------------------------------
# the seven TM extractors


def extract_agreement(tl: TokenList, lexicon: lx.PatternLexicon) -> int:
    """Guarded agreement-keyword count.

    A keyword is suppressed when a negation-class token occurs within the
    3 preceding tokens of its sentence, or a contrast-class token occurs
    anywhere after it in the same sentence.
    """
    neg = set(lexicon.classes["neg"])
    contrast = set(lexicon.classes["contrast"])
    keywords = {
        pattern.slots[0][1]
        for pattern in lexicon.patterns
        if len(pattern.slots) == 1 and pattern.slots[0][0] == lx.LITERAL
    }
    count = 0
    for forms in _sentence_forms(tl):
        for i, form in enumerate(forms):
            if form not in keywords:
                continue
            window = forms[max(0, i - AGREEMENT_NEG_WINDOW) : i]
            if any(w in neg for w in window):
                continue
            if any(w in contrast for w in forms[i + 1 :]):
                continue
            count += 1
    return count


def extract_denial(tl: TokenList, expanded: lx.ExpandedLexicon) -> int:
    return count_expanded(tl, expanded)


def extract_cues(
    tl: TokenList, lexicon_set: LexiconSet
) -> list[int]:
    """Per-entry counts for the 18 cue entries, in file order."""
    values = []
    for name, concretes in lexicon_set.cue_entries:
        if name == "cogmech":
            words = lexicon_set.cogmech_words
            values.append(sum(1 for t in tl.tokens if t.kind != PUNCT and t.alt in words))
        else:
            values.append(sum(count_concrete(tl, c) for c in concretes))
    return values


def extract_hedges(tl: TokenList, expanded: lx.ExpandedLexicon) -> int:
    return count_expanded(tl, expanded)


def extract_duration(tl: TokenList) -> tuple[int, int, int]:
    chars = tl.char_count
    words = sum(1 for t in tl.tokens if t.kind != PUNCT)
    sentences = len(split_sentences(tl))
    return chars, words, sentences


def extract_polarity(
    tl: TokenList, mpqa: lx.PolarityLexicon, mode: str = POLARITY_SUM
) -> tuple[float, float]:
    """Strong-subjective positive/negative sums; MEAN divides by word count."""
    if mode not in (POLARITY_SUM, POLARITY_MEAN):
        raise ArgumentError(f"unknown polarity mode {mode!r}")
    pos = neg = 0
    words = 0
    for t in tl.tokens:
        if t.kind == PUNCT:
            continue
        words += 1
        if t.kind != WORD:
            continue
        entry = mpqa.entries.get(t.alt)
        if entry is None or entry[0] != lx.STRONG:
            continue
        polarity = entry[1]
        if polarity in (lx.POSITIVE, lx.BOTH):
            pos += 1
        if polarity in (lx.NEGATIVE, lx.BOTH):
            neg += 1
    if mode == POLARITY_MEAN:
        if words == 0:
            return 0.0, 0.0
        return pos / words, neg / words
    return float(pos), float(neg)


def extract_punctuation(tl: TokenList) -> tuple[int, int]:
    """Literal character counts of ? and ! in the raw text."""
    return tl.text.count("?"), tl.text.count("!")


# ---------------------------------------------------------------------------
# feature space


@dataclass(frozen=True)
class Attribute:
    name: str
    group: str
    kind: str
    prior: bool = False


@dataclass(frozen=True)
class FeatureSpace:
    attributes: tuple[Attribute, ...]
    ngram_scope: str = WITH_PUNCT
    ngram_binary: bool = False
    cross_sentences: bool = False

    def __post_init__(self):
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise ArgumentError("attribute names must be unique")

    def __len__(self) -> int:
        return len(self.attributes)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    @property
    def groups(self) -> tuple[str, ...]:
        seen = []
        for a in self.attributes:
            if a.group not in seen:
                seen.append(a.group)
        return tuple(seen)

    def group_indices(self, group: str) -> list[int]:
        return [i for i, a in enumerate(self.attributes) if a.group == group]

    def group_arity(self, group: str) -> int:
        return len(self.group_indices(group))

    def without_group(self, group: str) -> "FeatureSpace":
        keep = [a for a in self.attributes if a.group != group]
        if len(keep) == len(self.attributes):
            raise ConfigError(f"space has no group {group!r} to ablate")
        return FeatureSpace(
            tuple(keep), self.ngram_scope, self.ngram_binary, self.cross_sentences
        )

    def restrict(self, indices) -> "FeatureSpace":
        return FeatureSpace(
            tuple(self.attributes[i] for i in indices),
            self.ngram_scope,
            self.ngram_binary,
            self.cross_sentences,
        )

    @classmethod
    def from_names(
        cls,
        names,
        ngram_scope: str = WITH_PUNCT,
        ngram_binary: bool = False,
        cross_sentences: bool = False,
    ) -> "FeatureSpace":
        attrs = []
        for name in names:
            base = name
            prior = False
            if base.startswith("prior_"):
                prior = True
                base = base[len("prior_"):]
            prefix, sep, rest = base.partition(":")
            if not sep or prefix not in _PREFIX_TO_GROUP:
                raise SpaceMismatchError(f"unrecognized attribute name {name!r}")
            group = _PREFIX_TO_GROUP[prefix]
            kind = _GROUP_TO_KIND[group]
            if group == G_POLARITY and rest.endswith("_mean"):
                kind = MEAN
            attrs.append(Attribute(name, group, kind, prior))
        return cls(tuple(attrs), ngram_scope, ngram_binary, cross_sentences)


def _tm_attributes(lexicons: LexiconSet, groups, polarity_mode: str, prior: bool):
    prefix = "prior_" if prior else ""
    attrs: list[Attribute] = []
    if G_AGREEMENT in groups:
        attrs.append(Attribute(f"{prefix}agr:guarded", G_AGREEMENT, COUNT, prior))
    if G_CUE in groups:
        for name, _ in lexicons.cue_entries:
            attrs.append(Attribute(f"{prefix}cue:{name}", G_CUE, COUNT, prior))
    if G_DENIAL in groups:
        attrs.append(Attribute(f"{prefix}den:total", G_DENIAL, COUNT, prior))
    if G_HEDGE in groups:
        attrs.append(Attribute(f"{prefix}hdg:total", G_HEDGE, COUNT, prior))
    if G_DURATION in groups:
        for part in ("chars", "words", "sentences"):
            attrs.append(Attribute(f"{prefix}dur:{part}", G_DURATION, LENGTH, prior))
    if G_POLARITY in groups:
        if polarity_mode == POLARITY_MEAN:
            attrs.append(Attribute(f"{prefix}pol:positive_mean", G_POLARITY, MEAN, prior))
            attrs.append(Attribute(f"{prefix}pol:negative_mean", G_POLARITY, MEAN, prior))
        else:
            attrs.append(Attribute(f"{prefix}pol:positive", G_POLARITY, SUM, prior))
            attrs.append(Attribute(f"{prefix}pol:negative", G_POLARITY, SUM, prior))
    if G_PUNCTUATION in groups:
        attrs.append(Attribute(f"{prefix}pun:question", G_PUNCTUATION, COUNT, prior))
        attrs.append(Attribute(f"{prefix}pun:exclaim", G_PUNCTUATION, COUNT, prior))
    return attrs


def build_space(
    lexicons: LexiconSet,
    groups=TM_GROUPS,
    ngram_vocab=None,
    polarity_mode: str = POLARITY_SUM,
    include_prior: bool = False,
    ngram_scope: str = WITH_PUNCT,
    ngram_binary: bool = False,
    cross_sentences: bool = False,
) -> FeatureSpace:
    """Assemble a feature space in canonical group order.

    ``ngram_vocab`` is a list of (n, tokens) entries, required iff the ngram
    group is requested.
    """
    groups = tuple(groups)
    unknown = [g for g in groups if g not in ALL_GROUPS]
    if unknown:
        raise ArgumentError(f"unknown feature groups: {unknown}")
    if (G_NGRAM in groups) != (ngram_vocab is not None):
        raise ArgumentError("ngram_vocab must be given iff the ngram group is requested")
    attrs = _tm_attributes(lexicons, groups, polarity_mode, prior=False)
    if include_prior:
        attrs.extend(_tm_attributes(lexicons, groups, polarity_mode, prior=True))
    if G_NGRAM in groups:
        for n, tokens in ngram_vocab:
            attrs.append(Attribute(f"ng{n}:{' '.join(tokens)}", G_NGRAM, COUNT))
    return FeatureSpace(tuple(attrs), ngram_scope, ngram_binary, cross_sentences)


# ---------------------------------------------------------------------------
# vocabulary and featurization


def build_vocabulary(
    train_pairs,
    n: int,
    min_count: int = 1,
    scope: str = WITH_PUNCT,
    cross_sentences: bool = False,
) -> list[tuple[int, tuple[str, ...]]]:
    """Response-post ngram vocabulary from TRAIN data only.

    Entries are ordered by corpus frequency (descending) then lexicographic,
    so ties are stable across runs.
    """
    if n not in (1, 2):
        raise ArgumentError(f"ngram baseline supports n in {{1, 2}}, got {n}")
    if not train_pairs:
        raise ArgumentError("cannot build a vocabulary from an empty training set")
    counts: Counter = Counter()
    for pair in train_pairs:
        tl = tokenize(_response_text(pair))
        counts.update(ngrams(tl, n, scope, cross_sentences))
    kept = sorted(
        (g for g, c in counts.items() if c >= min_count),
        key=lambda g: (-counts[g], g),
    )
    return [(n, g) for g in kept]


def _response_text(pair) -> str:
    if isinstance(pair, LabeledPair):
        return pair.pair.response.text
    if isinstance(pair, AnnotatedPair):
        return pair.response.text
    raise ArgumentError(f"expected a dialogue pair, got {type(pair).__name__}")


def _prior_text(pair) -> str:
    if isinstance(pair, LabeledPair):
        return pair.pair.prior.text
    return pair.prior.text


@dataclass
class FeatureVector:
    space: FeatureSpace
    values: np.ndarray
    label: str | None = None
    pair_id: str = ""


@dataclass
class Dataset:
    X: np.ndarray
    y: list[str | None]
    pair_ids: list[str]
    space: FeatureSpace

    def __len__(self) -> int:
        return len(self.pair_ids)


class _SpaceIndex:
    """Per-space lookup tables so featurizing a corpus stays linear."""

    def __init__(self, space: FeatureSpace):
        self.space = space
        self.tm_slices: dict[tuple[str, bool], list[int]] = {}
        self.ngram_cols: dict[tuple[int, tuple[str, ...]], int] = {}
        self.ngram_ns: set[int] = set()
        self.polarity_mode = POLARITY_SUM
        for i, attr in enumerate(space.attributes):
            if attr.group == G_NGRAM:
                prefix, _, rest = attr.name.partition(":")
                n = int(prefix[2:])
                self.ngram_cols[(n, tuple(rest.split(" ")))] = i
                self.ngram_ns.add(n)
            else:
                self.tm_slices.setdefault((attr.group, attr.prior), []).append(i)
                if attr.group == G_POLARITY and attr.kind == MEAN:
                    self.polarity_mode = POLARITY_MEAN


def _fill_tm(values, index: _SpaceIndex, tl: TokenList, lexicons: LexiconSet, prior: bool):
    for (group, is_prior), cols in index.tm_slices.items():
        if is_prior != prior:
            continue
        if group == G_AGREEMENT:
            block = [extract_agreement(tl, lexicons.agreement)]
        elif group == G_CUE:
            block = extract_cues(tl, lexicons)
        elif group == G_DENIAL:
            block = [extract_denial(tl, lexicons.denial_expanded)]
        elif group == G_HEDGE:
            block = [extract_hedges(tl, lexicons.hedges_expanded)]
        elif group == G_DURATION:
            block = list(extract_duration(tl))
        elif group == G_POLARITY:
            block = list(extract_polarity(tl, lexicons.polarity, index.polarity_mode))
        elif group == G_PUNCTUATION:
            block = list(extract_punctuation(tl))
        else:  # pragma: no cover - groups are validated at space build time
            raise SpaceMismatchError(f"unknown group {group!r}")
        if len(block) != len(cols):
            raise SpaceMismatchError(
                f"group {group!r} produced {len(block)} values for {len(cols)} attributes"
            )
        for col, v in zip(cols, block):
            values[col] = v


def featurize(
    pair,
    space: FeatureSpace,
    lexicons: LexiconSet | None,
    _index: _SpaceIndex | None = None,
) -> FeatureVector:
    """Pure function of (pair, space, lexicons)."""
    index = _index or _SpaceIndex(space)
    needs_lexicons = any(
        a.group in (G_AGREEMENT, G_CUE, G_DENIAL, G_HEDGE, G_POLARITY)
        for a in space.attributes
    )
    if needs_lexicons and lexicons is None:
        raise SpaceMismatchError("this space requires lexicons, but none were given")
    values = np.zeros(len(space.attributes), dtype=np.float64)
    tl = tokenize(_response_text(pair))
    _fill_tm(values, index, tl, lexicons, prior=False)
    if any(k[1] for k in index.tm_slices):
        _fill_tm(values, index, tokenize(_prior_text(pair)), lexicons, prior=True)
    if index.ngram_cols:
        for n in sorted(index.ngram_ns):
            grams = ngrams(tl, n, space.ngram_scope, space.cross_sentences)
            for g, c in grams.items():
                col = index.ngram_cols.get((n, g))
                if col is not None:
                    values[col] = 1.0 if space.ngram_binary else float(c)
    label = pair.label if isinstance(pair, LabeledPair) else None
    pair_id = pair.pair_id if hasattr(pair, "pair_id") else ""
    return FeatureVector(space, values, label, pair_id)


def featurize_all(pairs, space: FeatureSpace, lexicons: LexiconSet | None) -> Dataset:
    index = _SpaceIndex(space)
    X = np.zeros((len(pairs), len(space.attributes)), dtype=np.float64)
    y: list[str | None] = []
    ids: list[str] = []
    for row, pair in enumerate(pairs):
        fv = featurize(pair, space, lexicons, _index=index)
        X[row] = fv.values
        y.append(fv.label)
        ids.append(fv.pair_id)
    return Dataset(X, y, ids, space)


# ---------------------------------------------------------------------------
# sklearn-style transformer


class DialogueFeaturizer(TransformerMixin, BaseEstimator):
    """fit/transform wrapper so the extractors compose with sklearn pipelines.

    ``fit`` builds the ngram vocabulary (train data only) and freezes the
    feature space; ``transform`` maps pairs to a dense float matrix.
    """

    def __init__(
        self,
        groups=TM_GROUPS,
        ngram_ns=(),
        min_count=1,
        ngram_scope=WITH_PUNCT,
        ngram_binary=False,
        polarity_mode=POLARITY_SUM,
        include_prior=False,
        cross_sentences=False,
        lexicons=None,
    ):
        self.groups = groups
        self.ngram_ns = ngram_ns
        self.min_count = min_count
        self.ngram_scope = ngram_scope
        self.ngram_binary = ngram_binary
        self.polarity_mode = polarity_mode
        self.include_prior = include_prior
        self.cross_sentences = cross_sentences
        self.lexicons = lexicons

    def fit(self, X, y=None):
        lex = self.lexicons if self.lexicons is not None else LexiconSet.load()
        groups = tuple(self.groups)
        vocab = None
        if self.ngram_ns:
            if G_NGRAM not in groups:
                groups = groups + (G_NGRAM,)
            vocab = []
            for n in self.ngram_ns:
                vocab.extend(
                    build_vocabulary(
                        list(X), n, self.min_count, self.ngram_scope, self.cross_sentences
                    )
                )
        self.lexicons_ = lex
        self.space_ = build_space(
            lex,
            groups,
            vocab,
            self.polarity_mode,
            self.include_prior,
            self.ngram_scope,
            self.ngram_binary,
            self.cross_sentences,
        )
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "space_"):
            raise SpaceMismatchError("DialogueFeaturizer must be fitted before transform")
        return featurize_all(list(X), self.space_, self.lexicons_).X

    def get_feature_names_out(self, input_features=None):
        return np.asarray(self.space_.names, dtype=object)


# ---------------------------------------------------------------------------
# feature matrix interchange format (TSV)

_MATRIX_MAGIC = "concord-matrix 1"


def _format_value(v: float) -> str:
    f = float(v)
    return str(int(f)) if f.is_integer() else repr(f)


def write_matrix(dataset: Dataset, dest) -> None:
    space = dataset.space
    lines = [
        f"# {_MATRIX_MAGIC}",
        f"# ngram_scope {space.ngram_scope}",
        f"# ngram_binary {int(space.ngram_binary)}",
        f"# cross_sentences {int(space.cross_sentences)}",
        "\t".join(("pair_id", *space.names, "label")),
    ]
    for pid, row, label in zip(dataset.pair_ids, dataset.X, dataset.y):
        cells = [pid, *(_format_value(v) for v in row), label or ""]
        lines.append("\t".join(cells))
    data = "\n".join(lines) + "\n"
    if hasattr(dest, "write"):
        dest.write(data)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(data)


def read_matrix(source) -> Dataset:
    if hasattr(source, "read"):
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    scope, binary, cross = WITH_PUNCT, False, False
    header = None
    rows: list[list[str]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if line.startswith("#"):
            parts = line[1:].strip().split(" ", 1)
            if parts[0] == "ngram_scope" and len(parts) > 1:
                scope = parts[1].strip()
            elif parts[0] == "ngram_binary" and len(parts) > 1:
                binary = parts[1].strip() == "1"
            elif parts[0] == "cross_sentences" and len(parts) > 1:
                cross = parts[1].strip() == "1"
            continue
        cells = line.split("\t")
        if header is None:
            header = cells
            continue
        if len(cells) != len(header):
            raise SpaceMismatchError(
                f"line {lineno}: expected {len(header)} cells, got {len(cells)}"
            )
        rows.append(cells)
    if header is None or header[0] != "pair_id" or header[-1] != "label":
        raise SpaceMismatchError("feature matrix needs a 'pair_id ... label' header")
    space = FeatureSpace.from_names(header[1:-1], scope, binary, cross)
    X = np.zeros((len(rows), len(space)), dtype=np.float64)
    y: list[str | None] = []
    ids: list[str] = []
    for r, cells in enumerate(rows):
        ids.append(cells[0])
        try:
            X[r] = [float(c) for c in cells[1:-1]]
        except ValueError as exc:
            raise SpaceMismatchError(f"non-numeric feature value in row {r + 1}: {exc}")
        y.append(cells[-1] or None)
    return Dataset(X, y, ids, space)

"""Load, validate, filter, split, and summarize annotated dialogue-pair corpora.

Corpus file format: UTF-8 tab-separated values with header
``pair_id  topic  prior_text  response_text  mean_agreement``.
Embedded tabs/newlines/carriage returns in text fields are escaped as
``\\t`` / ``\\n`` / ``\\r`` (and backslash as ``\\\\`` so escaping
round-trips); lines starting with ``#`` are comments.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import (
    ArgumentError,
    DecodeError,
    DuplicateIdError,
    EmptyPostError,
    RangeError,
    SchemaError,
)

AGREEMENT = "agreement"
DISAGREEMENT = "disagreement"
LABELS = (AGREEMENT, DISAGREEMENT)

UNKNOWN_TOPIC = "unknown"

COLUMNS = ("pair_id", "topic", "prior_text", "response_text", "mean_agreement")

MEAN_MIN, MEAN_MAX = -5.0, 5.0


@dataclass(frozen=True)
class Post:
    post_id: str
    text: str
    author: str | None = None


@dataclass(frozen=True)
class AnnotatedPair:
    pair_id: str
    topic: str
    prior: Post
    response: Post
    mean_agreement: float


@dataclass(frozen=True)
class LabeledPair:
    pair: AnnotatedPair
    label: str

    @property
    def topic(self) -> str:
        return self.pair.topic

    @property
    def pair_id(self) -> str:
        return self.pair.pair_id

    @property
    def response_text(self) -> str:
        return self.pair.response.text

    @property
    def prior_text(self) -> str:
        return self.pair.prior.text


@dataclass
class DatasetSplit:
    train: list[LabeledPair]
    test: list[LabeledPair]
    train_topics: frozenset[str]
    test_topics: frozenset[str]
    excluded: int = 0
    excluded_topics: Counter = field(default_factory=Counter)


def escape_field(s: str) -> str:
    return (
        s.replace("\\", "\\\\")
        .replace("\t", "\\t")
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


def unescape_field(s: str) -> str:
    if "\\" not in s:
        return s
    out = []
    i = 0
    n = len(s)
    while i < n:
        ch = s[i]
        if ch == "\\" and i + 1 < n:
            nxt = s[i + 1]
            mapped = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt)
            if mapped is not None:
                out.append(mapped)
                i += 2
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def _decode(source) -> list[str]:
    if hasattr(source, "read"):
        data = source.read()
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DecodeError(f"corpus is not valid UTF-8: {exc}") from exc
    return data.splitlines()


def load_pairs(source) -> list[AnnotatedPair]:
    """Load a corpus file or binary stream; raises on the first bad row.

    Every diagnostic names the offending physical line number.
    """
    lines = _decode(source)
    pairs: list[AnnotatedPair] = []
    seen_ids: dict[str, int] = {}
    header_seen = False
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cells = line.split("\t")
        if not header_seen:
            if tuple(cells) != COLUMNS:
                missing = [c for c in COLUMNS if c not in cells]
                raise SchemaError(
                    f"line {lineno}: bad header; expected {list(COLUMNS)}, "
                    f"got {cells} (missing: {missing})"
                )
            header_seen = True
            continue
        if len(cells) != len(COLUMNS):
            raise SchemaError(
                f"line {lineno}: expected {len(COLUMNS)} columns, got {len(cells)}"
            )
        pair_id, topic, prior_text, response_text, mean_raw = (
            unescape_field(c) for c in cells
        )
        try:
            mean = float(mean_raw)
        except ValueError as exc:
            raise SchemaError(
                f"line {lineno}: mean_agreement {mean_raw!r} is not a number"
            ) from exc
        if not (MEAN_MIN <= mean <= MEAN_MAX):
            raise RangeError(
                f"line {lineno}: mean_agreement {mean} outside "
                f"[{MEAN_MIN:g}, {MEAN_MAX:g}]"
            )
        if not prior_text.strip():
            raise EmptyPostError(f"line {lineno}: prior_text is empty")
        if not response_text.strip():
            raise EmptyPostError(f"line {lineno}: response_text is empty")
        if pair_id in seen_ids:
            raise DuplicateIdError(
                f"line {lineno}: duplicate pair_id {pair_id!r} "
                f"(first seen on line {seen_ids[pair_id]})"
            )
        seen_ids[pair_id] = lineno
        topic = topic.strip() or UNKNOWN_TOPIC
        pairs.append(
            AnnotatedPair(
                pair_id=pair_id,
                topic=topic,
                prior=Post(f"{pair_id}/prior", prior_text),
                response=Post(f"{pair_id}/response", response_text),
                mean_agreement=mean,
            )
        )
    if not header_seen:
        raise SchemaError("corpus has no header row")
    return pairs


def write_pairs(pairs, dest) -> None:
    """Write pairs in the corpus file format; load_pairs(write_pairs(x)) == x."""
    lines = ["\t".join(COLUMNS)]
    for p in pairs:
        lines.append(
            "\t".join(
                (
                    escape_field(p.pair_id),
                    escape_field(p.topic),
                    escape_field(p.prior.text),
                    escape_field(p.response.text),
                    repr(float(p.mean_agreement)),
                )
            )
        )
    data = ("\n".join(lines) + "\n").encode("utf-8")
    if hasattr(dest, "write"):
        try:
            dest.write(data)
        except TypeError:  # text-mode stream
            dest.write(data.decode("utf-8"))
    else:
        with open(dest, "wb") as fh:
            fh.write(data)


def filter_by_threshold(
    pairs, lo: float = -1.0, hi: float = 1.0
) -> list[LabeledPair]:
    """Label pairs by mean agreement; |score| strictly inside (lo, hi) drops.

    Boundaries are inclusive: mean >= hi is agreement, mean <= lo is
    disagreement.
    """
    if lo >= hi:
        raise ArgumentError(f"need lo < hi, got lo={lo} hi={hi}")
    out: list[LabeledPair] = []
    for p in pairs:
        if p.mean_agreement >= hi:
            out.append(LabeledPair(p, AGREEMENT))
        elif p.mean_agreement <= lo:
            out.append(LabeledPair(p, DISAGREEMENT))
    return out


def split_by_topic(pairs, train_topics, test_topics) -> DatasetSplit:
    """Route labeled pairs by exact topic-name match.

    Pairs whose topic is in neither set are excluded and counted.
    """
    train_topics = frozenset(train_topics)
    test_topics = frozenset(test_topics)
    overlap = train_topics & test_topics
    if overlap:
        raise ArgumentError(f"train/test topics overlap: {sorted(overlap)}")
    split = DatasetSplit([], [], train_topics, test_topics)
    for p in pairs:
        if p.topic in train_topics:
            split.train.append(p)
        elif p.topic in test_topics:
            split.test.append(p)
        else:
            split.excluded += 1
            split.excluded_topics[p.topic] += 1
    return split


def corpus_stats(pairs) -> dict[str, tuple[int, int]]:
    """Per-topic (agreement, disagreement) counts, topics sorted by name."""
    agree: Counter = Counter()
    disagree: Counter = Counter()
    for p in pairs:
        if p.label == AGREEMENT:
            agree[p.topic] += 1
        else:
            disagree[p.topic] += 1
    topics = sorted(set(agree) | set(disagree))
    return {t: (agree[t], disagree[t]) for t in topics}

"""Deterministic tokenization, sentence segmentation, and ngram extraction.

Every feature extractor shares this substrate, so the rules are deliberately
simple and fixed:

* text is split on whitespace; leading/trailing punctuation of each chunk is
  split off as single-character PUNCT tokens,
* ``?`` and ``!`` are always individual PUNCT tokens, even mid-chunk,
* apostrophes stay inside words ("don't" is one token) and every word also
  carries an apostrophe-free match form ("dont"),
* a run of ``.``, ``?``, ``!`` always ends a sentence; there is no
  abbreviation handling.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

from .errors import ArgumentError

WORD = "WORD"
PUNCT = "PUNCT"
NUMBER = "NUMBER"

# ngram scopes
WORDS_ONLY = "words_only"
WITH_PUNCT = "with_punct"

# numbers keep their surface in duration counts but collapse in ngram space
NUMBER_PLACEHOLDER = "<num>"

_APOSTROPHES = "'’"
_NUMBER_RE = re.compile(r"[0-9]+(?:[.,][0-9]+)*")
_TERMINALS = frozenset(".?!")


def strip_apostrophes(s: str) -> str:
    for ch in _APOSTROPHES:
        if ch in s:
            s = s.replace(ch, "")
    return s


@dataclass(frozen=True)
class Token:
    surface: str
    norm: str  # lowercased surface
    alt: str   # lowercased, apostrophes removed; equals norm for plain words
    kind: str  # WORD | PUNCT | NUMBER


@dataclass(frozen=True)
class TokenList:
    """Tokens of one post plus the raw text they came from."""

    text: str
    tokens: tuple[Token, ...]

    @property
    def char_count(self) -> int:
        return len(self.text)

    @property
    def word_count(self) -> int:
        return sum(1 for t in self.tokens if t.kind != PUNCT)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]


def _is_word_char(ch: str) -> bool:
    return ch.isalnum() or ch in _APOSTROPHES


def _classify(core: str) -> Token:
    norm = core.lower()
    kind = NUMBER if _NUMBER_RE.fullmatch(core) else WORD
    return Token(core, norm, strip_apostrophes(norm), kind)


def _tokenize_chunk(chunk: str, out: list[Token]) -> None:
    # split at ? / ! first so "creation???" yields three PUNCT tokens
    segment: list[str] = []
    pieces: list[str] = []
    for ch in chunk:
        if ch in "?!":
            if segment:
                pieces.append("".join(segment))
                segment = []
            pieces.append(ch)
        else:
            segment.append(ch)
    if segment:
        pieces.append("".join(segment))

    for piece in pieces:
        if piece in ("?", "!"):
            out.append(Token(piece, piece, piece, PUNCT))
            continue
        start, end = 0, len(piece)
        lead: list[str] = []
        trail: list[str] = []
        while start < end and not _is_word_char(piece[start]):
            lead.append(piece[start])
            start += 1
        while end > start and not _is_word_char(piece[end - 1]):
            trail.append(piece[end - 1])
            end -= 1
        for ch in lead:
            out.append(Token(ch, ch, ch, PUNCT))
        core = piece[start:end]
        if core:
            out.append(_classify(core))
        for ch in reversed(trail):
            out.append(Token(ch, ch, ch, PUNCT))


def tokenize(text: str) -> TokenList:
    """Tokenize ``text``; total on any str, deterministic."""
    tokens: list[Token] = []
    for chunk in text.split():
        _tokenize_chunk(chunk, tokens)
    return TokenList(text, tuple(tokens))


def split_sentences(tl: TokenList) -> list[tuple[int, int]]:
    """Half-open token spans; a run of . ? ! closes a sentence.

    A trailing span without terminal punctuation is still one sentence.
    The spans partition ``[0, len(tl))``.
    """
    spans: list[tuple[int, int]] = []
    tokens = tl.tokens
    n = len(tokens)
    start = 0
    i = 0
    while i < n:
        t = tokens[i]
        if t.kind == PUNCT and t.surface in _TERMINALS:
            j = i
            while j + 1 < n and tokens[j + 1].kind == PUNCT and tokens[j + 1].surface in _TERMINALS:
                j += 1
            spans.append((start, j + 1))
            start = j + 1
            i = j + 1
        else:
            i += 1
    if start < n:
        spans.append((start, n))
    return spans


def ngram_form(token: Token) -> str:
    return NUMBER_PLACEHOLDER if token.kind == NUMBER else token.norm


def ngrams(
    tl: TokenList,
    n: int,
    scope: str = WITH_PUNCT,
    cross_sentences: bool = False,
) -> Counter:
    """Multiset of normalized ngrams.

    Ngrams never cross sentence boundaries unless ``cross_sentences`` is set;
    ``scope`` controls whether PUNCT tokens participate.
    """
    if n < 1:
        raise ArgumentError(f"ngram order must be >= 1, got {n}")
    if scope not in (WORDS_ONLY, WITH_PUNCT):
        raise ArgumentError(f"unknown ngram scope {scope!r}")
    out: Counter = Counter()
    if cross_sentences:
        segments = [(0, len(tl))] if len(tl) else []
    else:
        segments = split_sentences(tl)
    for start, end in segments:
        eligible = [
            ngram_form(t)
            for t in tl.tokens[start:end]
            if scope == WITH_PUNCT or t.kind != PUNCT
        ]
        for i in range(len(eligible) - n + 1):
            out[tuple(eligible[i : i + n])] += 1
    return out

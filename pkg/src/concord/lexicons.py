"""Pattern lexicons behind each cue family, plus the subjectivity lexicon.

Lexicon file format (UTF-8, one item per line):

* ``# ...`` comment, blank lines ignored
* ``name: denial`` / ``version: 1`` / ``approximation: true`` metadata
* ``class pron = i you we they`` declares a generalization class
  (classes must be declared before the patterns that use them)
* any other line is a pattern of space-separated slots, where ``<pron>``
  references a class and everything else is a literal token.

Literals and class members are matched case-insensitively with apostrophes
removed on both sides, so a pattern written ``dont`` matches both "dont" and
"don't" in text.

The subjectivity lexicon uses the standard clue format, one record per line
of ``key=value`` pairs with at least ``type``, ``word1``, ``priorpolarity``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ArgumentError, ExplosionError, ParseError, UnknownClassError
from .textproc import strip_apostrophes

LITERAL = "lit"
CLASS = "class"

SEED = "seed"
GENERALIZED = "generalized"

STRONG = "strong"
WEAK = "weak"
POSITIVE = "positive"
NEGATIVE = "negative"
NEUTRAL = "neutral"
BOTH = "both"

MAX_EXPANSIONS_PER_PATTERN = 10_000

_METADATA_KEYS = ("name", "version", "approximation")


@dataclass(frozen=True)
class Pattern:
    """Ordered slots, each a ('lit', token) or ('class', name) pair."""

    slots: tuple[tuple[str, str], ...]
    source: str = SEED
    line: int = 0

    def __post_init__(self):
        if not self.slots:
            raise ArgumentError("a pattern needs at least one slot")

    @property
    def text(self) -> str:
        return " ".join(
            tok if kind == LITERAL else f"<{tok}>" for kind, tok in self.slots
        )


@dataclass(frozen=True)
class Expansion:
    """One concrete ngram produced by expanding a pattern."""

    tokens: tuple[str, ...]
    seed: Pattern


@dataclass
class PatternLexicon:
    name: str
    patterns: tuple[Pattern, ...]
    classes: dict[str, tuple[str, ...]]
    version: str = "0"
    approximation: bool = False

    def expansion_bound(self, pattern: Pattern) -> int:
        n = 1
        for kind, tok in pattern.slots:
            if kind == CLASS:
                n *= max(1, len(self.classes[tok]))
        return n


@dataclass
class ExpandedLexicon:
    """Deduplicated concrete ngrams of one lexicon, indexed for matching."""

    name: str
    ngrams: dict[tuple[str, ...], Pattern]
    duplicates: list[tuple[tuple[str, ...], Pattern, Pattern]]
    by_first: dict[str, list[tuple[str, ...]]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.by_first:
            for toks in self.ngrams:
                self.by_first.setdefault(toks[0], []).append(toks)

    def __len__(self) -> int:
        return len(self.ngrams)


@dataclass
class PolarityLexicon:
    entries: dict[str, tuple[str, str]]  # word -> (strength, polarity)
    conflicts: list[str] = field(default_factory=list)
    skipped: int = 0
    version: str = "0"

    def words(self, strength: str, polarity: str) -> list[str]:
        return sorted(
            w
            for w, (s, p) in self.entries.items()
            if s == strength and (p == polarity or p == BOTH)
        )


def _read_lines(source):
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return data.splitlines()
    with open(source, "r", encoding="utf-8") as fh:
        return fh.read().splitlines()


def _canon(token: str) -> str:
    return strip_apostrophes(token.lower())


def load_lexicon(source, name: str | None = None) -> PatternLexicon:
    """Parse a pattern lexicon; generalizations are NOT expanded here."""
    classes: dict[str, tuple[str, ...]] = {}
    patterns: list[Pattern] = []
    meta = {"name": name or "", "version": "0", "approximation": "false"}

    for lineno, raw in enumerate(_read_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if sep and key in _METADATA_KEYS:
            meta[key] = rest.strip()
            continue
        if line.startswith("class "):
            decl = line[len("class "):]
            cname, eq, members = decl.partition("=")
            cname = cname.strip()
            if not eq or not cname:
                raise ParseError(f"line {lineno}: malformed class declaration {line!r}")
            toks = tuple(_canon(t) for t in members.split())
            if not toks:
                raise ParseError(f"line {lineno}: class {cname!r} has no members")
            classes[cname] = toks
            continue
        slots: list[tuple[str, str]] = []
        for tok in line.split():
            if tok.startswith("<") and tok.endswith(">") and len(tok) > 2:
                cname = tok[1:-1]
                if cname not in classes:
                    raise UnknownClassError(
                        f"line {lineno}: pattern references undeclared class <{cname}> "
                        "(declare classes before patterns)"
                    )
                slots.append((CLASS, cname))
            else:
                slots.append((LITERAL, _canon(tok)))
        if not slots:
            raise ParseError(f"line {lineno}: empty pattern")
        patterns.append(Pattern(tuple(slots), SEED, lineno))

    return PatternLexicon(
        name=meta["name"] or (name or ""),
        patterns=tuple(patterns),
        classes=classes,
        version=meta["version"],
        approximation=meta["approximation"].lower() in ("true", "1", "yes"),
    )


def expand_generalizations(lexicon: PatternLexicon) -> ExpandedLexicon:
    """Cartesian expansion of every CLASS slot; deduplicated.

    Deterministic and order-independent at the concrete-ngram-set level;
    on duplicates the first seed in file order wins and the collision is
    recorded.
    """
    ngrams: dict[tuple[str, ...], Pattern] = {}
    duplicates: list[tuple[tuple[str, ...], Pattern, Pattern]] = []
    for pattern in lexicon.patterns:
        bound = lexicon.expansion_bound(pattern)
        if bound > MAX_EXPANSIONS_PER_PATTERN:
            raise ExplosionError(
                f"pattern {pattern.text!r} would expand to {bound} concrete ngrams "
                f"(limit {MAX_EXPANSIONS_PER_PATTERN})"
            )
        choices = [
            (tok,) if kind == LITERAL else lexicon.classes[tok]
            for kind, tok in pattern.slots
        ]
        for combo in itertools.product(*choices):
            if combo in ngrams:
                duplicates.append((combo, ngrams[combo], pattern))
            else:
                ngrams[combo] = pattern
    return ExpandedLexicon(lexicon.name, ngrams, duplicates)


def load_mpqa(source) -> PolarityLexicon:
    """Load a subjectivity lexicon in the published clue format.

    Entries are keyed by lowercase, apostrophe-stripped ``word1``. POS fields
    are ignored: a word matches regardless of syntactic use. Duplicate words
    resolve as: strong beats weak; same strength with conflicting polarity
    keeps ``both``.
    """
    entries: dict[str, tuple[str, str]] = {}
    conflicts: list[str] = []
    skipped = 0
    for lineno, raw in enumerate(_read_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = {}
        for part in line.split():
            key, sep, value = part.partition("=")
            if not sep:
                raise ParseError(f"line {lineno}: expected key=value, got {part!r}")
            fields[key] = value
        if not {"type", "word1", "priorpolarity"} <= fields.keys():
            skipped += 1
            continue
        tpe = fields["type"].lower()
        if tpe == "strongsubj":
            strength = STRONG
        elif tpe == "weaksubj":
            strength = WEAK
        else:
            raise ParseError(f"line {lineno}: unknown type {fields['type']!r}")
        polarity = fields["priorpolarity"].lower()
        if polarity not in (POSITIVE, NEGATIVE, NEUTRAL, BOTH):
            raise ParseError(f"line {lineno}: unknown priorpolarity {polarity!r}")
        word = _canon(fields["word1"])
        if word in entries:
            old_strength, old_polarity = entries[word]
            if old_strength == strength and old_polarity != polarity:
                entries[word] = (strength, BOTH)
                conflicts.append(word)
            elif old_strength == WEAK and strength == STRONG:
                entries[word] = (strength, polarity)
                conflicts.append(word)
            elif old_strength == strength and old_polarity == polarity:
                pass
            else:
                conflicts.append(word)  # strong already present, weak dup ignored
        else:
            entries[word] = (strength, polarity)
    return PolarityLexicon(entries, conflicts, skipped)


def write_mpqa(lexicon: PolarityLexicon) -> str:
    """Serialize the retained entries back to clue format (round-trip stable)."""
    strength_name = {STRONG: "strongsubj", WEAK: "weaksubj"}
    lines = []
    for word in sorted(lexicon.entries):
        strength, polarity = lexicon.entries[word]
        lines.append(
            f"type={strength_name[strength]} len=1 word1={word} "
            f"pos1=anypos stemmed1=n priorpolarity={polarity}"
        )
    return "\n".join(lines) + "\n"


@dataclass
class LexiconCheck:
    name: str
    passed: bool
    detail: str


def validate_lexicon(lexicon: PatternLexicon) -> list[LexiconCheck]:
    """Pure validation report: duplicates, empty classes, size gates."""
    checks: list[LexiconCheck] = []
    for cname, members in lexicon.classes.items():
        checks.append(
            LexiconCheck(
                f"class {cname} non-empty",
                len(members) > 0,
                f"{len(members)} members",
            )
        )
    expanded = expand_generalizations(lexicon)
    for combo, first, second in expanded.duplicates:
        checks.append(
            LexiconCheck(
                "duplicate expansion",
                False,
                f"{' '.join(combo)!r} produced by both {first.text!r} (line {first.line}) "
                f"and {second.text!r} (line {second.line})",
            )
        )
    if not expanded.duplicates:
        checks.append(LexiconCheck("no duplicate expansions", True, ""))
    lname = lexicon.name.lower()
    if lname == "denial":
        checks.append(
            LexiconCheck(
                "expansions >= 300",
                len(expanded) >= 300,
                f"{len(expanded)} concrete ngrams",
            )
        )
    if lname in ("cue", "cues"):
        checks.append(
            LexiconCheck(
                "cue count = 18",
                len(lexicon.patterns) == 18,
                f"{len(lexicon.patterns)} entries",
            )
        )
    return checks

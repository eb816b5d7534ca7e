"""Exception types shared across the package."""


class ConcordError(Exception):
    """Base class for all errors raised by this package."""


class ArgumentError(ConcordError, ValueError):
    """A caller-supplied argument violates a documented precondition."""


class DecodeError(ConcordError):
    """Input bytes are not valid UTF-8."""


class SchemaError(ConcordError):
    """A tabular input does not match the declared column schema."""


class RangeError(ConcordError):
    """A numeric field is outside its documented range."""


class EmptyPostError(ConcordError):
    """A post text is empty after whitespace trimming."""


class DuplicateIdError(ConcordError):
    """Two corpus rows share the same pair_id."""


class ParseError(ConcordError):
    """A lexicon or config file line could not be parsed."""


class UnknownClassError(ParseError):
    """A pattern references a class that was never declared."""


class ExplosionError(ConcordError):
    """A single pattern expands to more concrete ngrams than allowed."""


class SpaceMismatchError(ConcordError):
    """A vector, dataset, or model does not match the expected feature space."""


class DegenerateDataError(ConcordError):
    """A dataset cannot support the requested computation (e.g. one class)."""


class EmptyTestError(ConcordError):
    """An evaluation was requested on an empty test set."""


class ConfigError(ConcordError):
    """A run configuration is invalid or references missing resources."""

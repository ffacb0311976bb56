"""Typed errors with stable machine-readable codes.

Every error raised by the engine maps to exactly one code; the HTTP layer
serializes the code verbatim so clients can branch on it.
"""

from __future__ import annotations


class StoryweaveError(Exception):
    """Base class; subclasses set a stable ``code`` string."""

    code = "INTERNAL"

    def __init__(self, message: str = ""):
        super().__init__(message or self.__class__.__name__)


# --- document ---------------------------------------------------------------

class EmptyDocument(StoryweaveError):
    code = "EMPTY_DOCUMENT"


class SpanOutOfBounds(StoryweaveError):
    code = "SPAN_OUT_OF_BOUNDS"


class EmptySpan(StoryweaveError):
    code = "EMPTY_SPAN"


class SpanNotOnCurrentRevision(StoryweaveError):
    code = "SPAN_NOT_CURRENT"


class EditOutOfBounds(StoryweaveError):
    code = "EDIT_OUT_OF_BOUNDS"


class NoActiveSpan(StoryweaveError):
    code = "NO_ACTIVE_SPAN"


class EmptyReplacement(StoryweaveError):
    code = "EMPTY_REPLACEMENT"


# --- cart -------------------------------------------------------------------

class UnknownNode(StoryweaveError):
    code = "UNKNOWN_NODE"


class InvalidLabel(StoryweaveError):
    code = "INVALID_LABEL"


class DuplicateSibling(StoryweaveError):
    code = "DUPLICATE_SIBLING"


class AlreadyExpanded(StoryweaveError):
    code = "ALREADY_EXPANDED"


class AlreadyProbed(StoryweaveError):
    code = "ALREADY_PROBED"


class DepthCapExceeded(StoryweaveError):
    code = "DEPTH_CAP"


class SelectionCapExceeded(StoryweaveError):
    code = "SELECTION_CAP"


# --- prompts ----------------------------------------------------------------

class MissingVariable(StoryweaveError):
    code = "MISSING_VARIABLE"


class WrongKindArguments(StoryweaveError):
    code = "WRONG_KIND_ARGUMENTS"


class MalformedDirections(StoryweaveError):
    code = "MALFORMED_DIRECTIONS"


class EmptyVariation(StoryweaveError):
    code = "EMPTY_VARIATION"


# --- gateway ----------------------------------------------------------------

class ProviderError(StoryweaveError):
    code = "PROVIDER_ERROR"


class ProviderTimeout(ProviderError):
    code = "PROVIDER_TIMEOUT"


class ProviderRejected(ProviderError):
    code = "PROVIDER_REJECTED"


class MalformedProviderEnvelope(ProviderError):
    code = "MALFORMED_PROVIDER_ENVELOPE"


class FixtureMissing(ProviderError):
    code = "FIXTURE_MISSING"


# --- mutants ----------------------------------------------------------------

class NoSelection(StoryweaveError):
    code = "NO_SELECTION"


class UnknownVariation(StoryweaveError):
    code = "UNKNOWN_VARIATION"


class NoActiveVariation(StoryweaveError):
    code = "NO_ACTIVE_VARIATION"


class StaleVariation(StoryweaveError):
    code = "STALE_VARIATION"


# --- service ----------------------------------------------------------------

class UnknownSession(StoryweaveError):
    code = "UNKNOWN_SESSION"


class MalformedCommand(StoryweaveError):
    code = "MALFORMED_COMMAND"


class CorruptLog(StoryweaveError):
    code = "CORRUPT_LOG"

"""Story draft state: revisions, the highlighted span, and span-accurate edits.

All values are immutable snapshots; every operation returns a new
``StoryDocument``. Offsets are measured in Unicode scalar values (Python
``str`` indices), never bytes.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, replace

from .errors import (
    EditOutOfBounds,
    EmptyDocument,
    EmptyReplacement,
    EmptySpan,
    NoActiveSpan,
    SpanNotOnCurrentRevision,
    SpanOutOfBounds,
)

CAUSE_INITIAL = "initial"
CAUSE_MANUAL_EDIT = "manual_edit"
CAUSE_REPLACEMENT = "replacement"


@dataclass(frozen=True)
class Span:
    """Half-open [start, end) range bound to one revision of a document."""

    start: int
    end: int
    revision: int


@dataclass(frozen=True)
class Revision:
    text: str
    parent: int | None
    cause: str
    variation_id: str | None = None


@dataclass(frozen=True)
class StoryDocument:
    doc_id: str
    revisions: tuple[Revision, ...]
    current: int
    active_span: Span | None = None

    @property
    def text(self) -> str:
        return self.revisions[self.current].text

    @property
    def selected_part(self) -> str | None:
        if self.active_span is None:
            return None
        return self.text[self.active_span.start : self.active_span.end]


@dataclass(frozen=True)
class EditResult:
    document: StoryDocument
    span_invalidated: bool


def create_document(text: str, doc_id: str | None = None) -> StoryDocument:
    if not text or not text.strip():
        raise EmptyDocument("document text is empty or whitespace")
    return StoryDocument(
        doc_id=doc_id or uuid.uuid4().hex,
        revisions=(Revision(text=text, parent=None, cause=CAUSE_INITIAL),),
        current=0,
    )


def _check_span(doc: StoryDocument, span: Span) -> None:
    if span.revision != doc.current:
        raise SpanNotOnCurrentRevision(
            f"span bound to revision {span.revision}, current is {doc.current}"
        )
    if not (0 <= span.start <= span.end <= len(doc.text)):
        raise SpanOutOfBounds(
            f"span [{span.start},{span.end}) out of bounds for text of length {len(doc.text)}"
        )


def set_highlight(doc: StoryDocument, span: Span) -> StoryDocument:
    if span.start > span.end or span.start < 0 or span.end > len(doc.text):
        raise SpanOutOfBounds(
            f"span [{span.start},{span.end}) invalid for text of length {len(doc.text)}"
        )
    if span.revision != doc.current:
        raise SpanNotOnCurrentRevision(
            f"span bound to revision {span.revision}, current is {doc.current}"
        )
    if span.start == span.end:
        raise EmptySpan("highlight must cover at least one character")
    return replace(doc, active_span=span)


def clear_highlight(doc: StoryDocument) -> StoryDocument:
    return replace(doc, active_span=None)


def edit(doc: StoryDocument, at: int, delete_len: int, insert: str) -> EditResult:
    """Apply a splice edit, producing a new revision.

    The active span is shifted when the edit falls entirely before it,
    untouched when entirely after, and invalidated when the ranges intersect.
    """
    text = doc.text
    if delete_len < 0 or at < 0 or at + delete_len > len(text):
        raise EditOutOfBounds(
            f"edit [{at},{at + delete_len}) out of bounds for text of length {len(text)}"
        )
    new_text = text[:at] + insert + text[at + delete_len :]
    new_index = len(doc.revisions)
    revision = Revision(text=new_text, parent=doc.current, cause=CAUSE_MANUAL_EDIT)

    span = doc.active_span
    new_span: Span | None = None
    invalidated = False
    if span is not None:
        edit_end = at + delete_len
        delta = len(insert) - delete_len
        if edit_end <= span.start:
            new_span = Span(span.start + delta, span.end + delta, new_index)
        elif at >= span.end:
            new_span = Span(span.start, span.end, new_index)
        else:
            invalidated = True

    new_doc = StoryDocument(
        doc_id=doc.doc_id,
        revisions=doc.revisions + (revision,),
        current=new_index,
        active_span=new_span,
    )
    return EditResult(document=new_doc, span_invalidated=invalidated)


def replace_highlight(
    doc: StoryDocument, replacement_text: str, variation_id: str
) -> StoryDocument:
    if doc.active_span is None:
        raise NoActiveSpan("no highlighted span to replace")
    if not replacement_text:
        raise EmptyReplacement("replacement text is empty")
    _check_span(doc, doc.active_span)
    span = doc.active_span
    text = doc.text
    new_text = text[: span.start] + replacement_text + text[span.end :]
    new_index = len(doc.revisions)
    revision = Revision(
        text=new_text,
        parent=doc.current,
        cause=CAUSE_REPLACEMENT,
        variation_id=variation_id,
    )
    new_span = Span(span.start, span.start + len(replacement_text), new_index)
    return StoryDocument(
        doc_id=doc.doc_id,
        revisions=doc.revisions + (revision,),
        current=new_index,
        active_span=new_span,
    )


# --- serialization ----------------------------------------------------------

def span_to_dict(span: Span) -> dict:
    return {"start": span.start, "end": span.end, "revision": span.revision}


def span_from_dict(d: dict) -> Span:
    return Span(start=d["start"], end=d["end"], revision=d["revision"])


def document_to_dict(doc: StoryDocument) -> dict:
    return {
        "doc_id": doc.doc_id,
        "current": doc.current,
        "active_span": span_to_dict(doc.active_span) if doc.active_span else None,
        "revisions": [
            {
                "text": r.text,
                "parent": r.parent,
                "cause": r.cause,
                "variation_id": r.variation_id,
            }
            for r in doc.revisions
        ],
    }


def document_from_dict(d: dict) -> StoryDocument:
    return StoryDocument(
        doc_id=d["doc_id"],
        current=d["current"],
        active_span=span_from_dict(d["active_span"]) if d.get("active_span") else None,
        revisions=tuple(
            Revision(
                text=r["text"],
                parent=r["parent"],
                cause=r["cause"],
                variation_id=r.get("variation_id"),
            )
            for r in d["revisions"]
        ),
    )

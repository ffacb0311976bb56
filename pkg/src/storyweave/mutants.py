"""Variation synthesis and the mutant tracker.

Variations are immutable once created; the tracker is the labeled,
append-only history (M1, M2, …) with an active pointer for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import cart, document, prompting
from .document import Span, StoryDocument
from .errors import (
    NoActiveSpan,
    NoActiveVariation,
    NoSelection,
    StaleVariation,
    UnknownVariation,
)
from .prompting import ValidationReport


@dataclass(frozen=True)
class Variation:
    variation_id: str
    label: str
    direction_paths: tuple[str, ...]
    text: str
    emphasized: tuple[tuple[int, int], ...]
    source_span: Span
    source_revision: int
    validation: ValidationReport
    created_at: float
    lenient_notice: bool = False


@dataclass(frozen=True)
class MutantTracker:
    entries: tuple[str, ...] = ()
    active: str | None = None


def next_label(tracker: MutantTracker) -> str:
    return f"M{len(tracker.entries) + 1}"


def build_variation(
    doc: StoryDocument,
    tree: cart.DirectionTree,
    tracker: MutantTracker,
    provider,
    created_at: float,
    max_length_ratio: float = 2.0,
) -> Variation:
    """Compile the synthesis prompt, call the provider, parse and validate.

    Pure with respect to the tracker; the caller appends the result.
    """
    paths = cart.qualified_paths(tree)
    if not paths:
        raise NoSelection("no directions selected")
    if doc.active_span is None:
        raise NoActiveSpan("no highlighted span to vary")
    selected_part = doc.selected_part
    assert selected_part is not None
    prompt = prompting.compile(
        prompting.KIND_SYNTHESIS, doc.text, selected_part, paths, len(paths)
    )
    raw = provider.generate(prompt).text
    parsed = prompting.parse_variation(raw)
    report = prompting.validate_variation(parsed, selected_part, max_length_ratio)
    label = next_label(tracker)
    return Variation(
        variation_id=label,
        label=label,
        direction_paths=tuple(paths),
        text=parsed.text,
        emphasized=parsed.emphasized,
        source_span=doc.active_span,
        source_revision=doc.current,
        validation=report,
        created_at=created_at,
        lenient_notice=parsed.lenient_notice,
    )


def append(tracker: MutantTracker, variation: Variation) -> MutantTracker:
    return MutantTracker(
        entries=tracker.entries + (variation.variation_id,),
        active=variation.variation_id,
    )


def activate(tracker: MutantTracker, variation_id: str) -> MutantTracker:
    if variation_id not in tracker.entries:
        raise UnknownVariation(f"no variation {variation_id!r}")
    return replace(tracker, active=variation_id)


def accept_active(
    doc: StoryDocument,
    tracker: MutantTracker,
    variations: dict[str, Variation],
) -> tuple[StoryDocument, MutantTracker]:
    """Replace the highlighted span with the active variation's text.

    Fails loudly when the document moved past the variation's source
    revision. Acceptance clears the active pointer.
    """
    if tracker.active is None:
        raise NoActiveVariation("no active variation to accept")
    variation = variations[tracker.active]
    if variation.source_revision != doc.current:
        raise StaleVariation(
            f"variation {variation.label} targets revision "
            f"{variation.source_revision}, document is at {doc.current}"
        )
    new_doc = document.replace_highlight(doc, variation.text, variation.variation_id)
    return new_doc, replace(tracker, active=None)


# --- serialization ----------------------------------------------------------

def variation_to_dict(v: Variation) -> dict:
    return {
        "variation_id": v.variation_id,
        "label": v.label,
        "direction_paths": list(v.direction_paths),
        "text": v.text,
        "emphasized": [[s, e] for s, e in v.emphasized],
        "source_span": document.span_to_dict(v.source_span),
        "source_revision": v.source_revision,
        "validation": {
            "too_long": v.validation.too_long,
            "no_emphasis": v.validation.no_emphasis,
        },
        "created_at": v.created_at,
        "lenient_notice": v.lenient_notice,
    }


def variation_from_dict(d: dict) -> Variation:
    return Variation(
        variation_id=d["variation_id"],
        label=d["label"],
        direction_paths=tuple(d["direction_paths"]),
        text=d["text"],
        emphasized=tuple((s, e) for s, e in d["emphasized"]),
        source_span=document.span_from_dict(d["source_span"]),
        source_revision=d["source_revision"],
        validation=ValidationReport(
            too_long=d["validation"]["too_long"],
            no_emphasis=d["validation"]["no_emphasis"],
        ),
        created_at=d["created_at"],
        lenient_notice=d.get("lenient_notice", False),
    )


def tracker_to_dict(t: MutantTracker) -> dict:
    return {"entries": list(t.entries), "active": t.active}


def tracker_from_dict(d: dict) -> MutantTracker:
    return MutantTracker(entries=tuple(d["entries"]), active=d.get("active"))

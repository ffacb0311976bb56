"""Session orchestration: command dispatch, append-only event log, replay,
and telemetry aggregation.

The event log is the source of truth. Every successful command appends
exactly one event whose payload carries everything replay needs, including
provider-generated content, so ``replay`` reconstructs identical state
without re-calling any provider.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from . import cart, document, mutants
from .cart import DirectionTree, ExplorationPolicy
from .document import Span, StoryDocument
from .errors import CorruptLog, MalformedCommand, UnknownNode
from .mutants import MutantTracker, Variation

LOG_FORMAT_VERSION = 1

EVENT_KINDS = (
    "created",
    "highlighted",
    "probed",
    "expanded",
    "added_manual",
    "selected",
    "deselected",
    "synthesized",
    "activated",
    "accepted",
    "edited",
    "reprobed",
)


@dataclass(frozen=True)
class SessionEvent:
    ordinal: int
    kind: str
    payload: dict
    at: float

    def to_dict(self) -> dict:
        return {
            "v": LOG_FORMAT_VERSION,
            "ordinal": self.ordinal,
            "kind": self.kind,
            "payload": self.payload,
            "at": self.at,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SessionEvent":
        return cls(
            ordinal=d["ordinal"], kind=d["kind"], payload=d["payload"], at=d["at"]
        )


@dataclass(frozen=True)
class CommandResult:
    event: SessionEvent
    view: dict
    notices: tuple[str, ...] = ()


class Session:
    """Single-writer session; commands are serialized by an internal lock."""

    def __init__(
        self,
        session_id: str,
        doc: StoryDocument,
        tree: DirectionTree,
        provider=None,
        max_length_ratio: float = 2.0,
    ):
        self.session_id = session_id
        self.document = doc
        self.tree = tree
        self.tracker = MutantTracker()
        self.variations: dict[str, Variation] = {}
        self.events: list[SessionEvent] = []
        self.provider = provider
        self.max_length_ratio = max_length_ratio
        self.lock = threading.RLock()
        self._listeners: list = []

    @property
    def policy(self) -> ExplorationPolicy:
        return self.tree.policy

    # --- event plumbing -----------------------------------------------------

    def _append(self, kind: str, payload: dict, at: float | None = None) -> SessionEvent:
        event = SessionEvent(
            ordinal=len(self.events) + 1,
            kind=kind,
            payload=payload,
            at=time.time() if at is None else at,
        )
        self.events.append(event)
        for listener in self._listeners:
            listener(self, event)
        return event

    def add_listener(self, fn) -> None:
        """fn(session, event) is called after each append (persistence hook)."""
        self._listeners.append(fn)

    # --- construction -------------------------------------------------------

    @classmethod
    def create(
        cls,
        story_text: str,
        policy: ExplorationPolicy | None = None,
        provider=None,
        session_id: str | None = None,
        max_length_ratio: float = 2.0,
    ) -> "Session":
        policy = policy or ExplorationPolicy.full()
        doc = document.create_document(story_text)
        session = cls(
            session_id=session_id or uuid.uuid4().hex,
            doc=doc,
            tree=cart.new_tree(policy),
            provider=provider,
            max_length_ratio=max_length_ratio,
        )
        session._append(
            "created",
            {
                "session_id": session.session_id,
                "doc_id": doc.doc_id,
                "text": story_text,
                "policy": cart.policy_to_dict(policy),
                "max_length_ratio": max_length_ratio,
            },
        )
        return session

    # --- operations ---------------------------------------------------------

    def highlight(self, start: int, end: int) -> CommandResult:
        with self.lock:
            span = Span(start=start, end=end, revision=self.document.current)
            self.document = document.set_highlight(self.document, span)
            event = self._append(
                "highlighted",
                {"start": start, "end": end, "revision": self.document.current},
            )
            return CommandResult(event=event, view={"document": self.document_view()})

    def edit(self, at_offset: int, delete_len: int, insert: str) -> CommandResult:
        with self.lock:
            result = document.edit(self.document, at_offset, delete_len, insert)
            self.document = result.document
            event = self._append(
                "edited",
                {
                    "at_offset": at_offset,
                    "delete_len": delete_len,
                    "insert": insert,
                    "span_invalidated": result.span_invalidated,
                },
            )
            notices = ("SpanInvalidated",) if result.span_invalidated else ()
            return CommandResult(
                event=event, view={"document": self.document_view()}, notices=notices
            )

    def probe(self, allow_reprobe: bool = False) -> CommandResult:
        with self.lock:
            selected = self.document.selected_part
            if not selected:
                raise MalformedCommand("probe requires a highlighted span")
            reprobe = bool(self.tree.roots)
            discarded = len(self.tree.nodes) if reprobe else 0
            new_tree = cart.probe(
                self.tree,
                selected,
                self.document.text,
                self.provider,
                allow_reprobe=allow_reprobe,
            )
            mapping = new_tree.as_map()
            labels = [mapping[r].label for r in new_tree.roots]
            self.tree = new_tree
            event = self._append(
                "reprobed" if reprobe else "probed",
                {"labels": labels, "discarded_nodes": discarded},
            )
            return CommandResult(event=event, view={"tree": self.tree_view()})

    def expand(self, node_id: str) -> CommandResult:
        with self.lock:
            selected = self.document.selected_part
            if not selected:
                raise MalformedCommand("expand requires a highlighted span")
            before = {nid for nid, _ in self.tree.nodes}
            node_depth = self.tree.node(node_id).depth
            self.tree = cart.expand(
                self.tree, node_id, selected, self.document.text, self.provider
            )
            mapping = self.tree.as_map()
            labels = [
                mapping[c].label
                for c in mapping[node_id].children
                if c not in before
            ]
            event = self._append(
                "expanded",
                {"node_id": node_id, "labels": labels, "depth": node_depth + 1},
            )
            return CommandResult(event=event, view={"tree": self.tree_view()})

    def add_manual(self, parent: str | None, label: str) -> CommandResult:
        with self.lock:
            before = {nid for nid, _ in self.tree.nodes}
            self.tree = cart.add_manual(self.tree, parent, label)
            (node_id,) = [nid for nid, _ in self.tree.nodes if nid not in before]
            node = self.tree.node(node_id)
            event = self._append(
                "added_manual",
                {
                    "parent": parent,
                    "label": node.label,
                    "node_id": node_id,
                    "depth": node.depth,
                },
            )
            return CommandResult(event=event, view={"tree": self.tree_view()})

    def set_selected(self, node_id: str, on: bool) -> CommandResult:
        with self.lock:
            self.tree = cart.set_selected(self.tree, node_id, on)
            event = self._append(
                "selected" if on else "deselected", {"node_id": node_id}
            )
            return CommandResult(event=event, view={"tree": self.tree_view()})

    def synthesize(self) -> CommandResult:
        with self.lock:
            at = time.time()
            variation = mutants.build_variation(
                self.document,
                self.tree,
                self.tracker,
                self.provider,
                created_at=at,
                max_length_ratio=self.max_length_ratio,
            )
            self.variations[variation.variation_id] = variation
            self.tracker = mutants.append(self.tracker, variation)
            event = self._append(
                "synthesized", mutants.variation_to_dict(variation), at=at
            )
            return CommandResult(
                event=event,
                view={
                    "variation": mutants.variation_to_dict(variation),
                    "tracker": mutants.tracker_to_dict(self.tracker),
                },
            )

    def activate(self, variation_id: str) -> CommandResult:
        with self.lock:
            self.tracker = mutants.activate(self.tracker, variation_id)
            event = self._append("activated", {"variation_id": variation_id})
            return CommandResult(
                event=event, view={"tracker": mutants.tracker_to_dict(self.tracker)}
            )

    def accept(self) -> CommandResult:
        with self.lock:
            active = self.tracker.active
            self.document, self.tracker = mutants.accept_active(
                self.document, self.tracker, self.variations
            )
            event = self._append(
                "accepted",
                {"variation_id": active, "new_revision": self.document.current},
            )
            return CommandResult(
                event=event,
                view={
                    "document": self.document_view(),
                    "tracker": mutants.tracker_to_dict(self.tracker),
                },
            )

    # --- command dispatch ---------------------------------------------------

    def apply_command(self, command: dict) -> CommandResult:
        if not isinstance(command, dict) or "kind" not in command:
            raise MalformedCommand("command must be an object with a 'kind'")
        kind = command["kind"]
        try:
            if kind == "highlight":
                return self.highlight(int(command["start"]), int(command["end"]))
            if kind == "edit":
                return self.edit(
                    int(command["at"]),
                    int(command["delete_len"]),
                    str(command["insert"]),
                )
            if kind == "probe":
                return self.probe(allow_reprobe=bool(command.get("allow_reprobe")))
            if kind == "expand":
                return self.expand(str(command["node_id"]))
            if kind == "add_manual":
                parent = command.get("parent")
                return self.add_manual(
                    str(parent) if parent is not None else None, str(command["label"])
                )
            if kind == "select":
                return self.set_selected(str(command["node_id"]), True)
            if kind == "deselect":
                return self.set_selected(str(command["node_id"]), False)
            if kind == "synthesize":
                return self.synthesize()
            if kind == "activate":
                return self.activate(str(command["variation_id"]))
            if kind == "accept":
                return self.accept()
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedCommand(f"bad arguments for {kind!r}: {exc}") from exc
        raise MalformedCommand(f"unknown command kind {kind!r}")

    # --- views --------------------------------------------------------------

    def document_view(self) -> dict:
        doc = self.document
        return {
            "doc_id": doc.doc_id,
            "text": doc.text,
            "revision": doc.current,
            "revision_count": len(doc.revisions),
            "active_span": document.span_to_dict(doc.active_span)
            if doc.active_span
            else None,
            "selected_part": doc.selected_part,
        }

    def tree_view(self) -> dict:
        return cart.tree_to_dict(self.tree)

    def view(self) -> dict:
        return {
            "session_id": self.session_id,
            "document": self.document_view(),
            "tree": self.tree_view(),
            "tracker": mutants.tracker_to_dict(self.tracker),
            "variations": {
                vid: mutants.variation_to_dict(v) for vid, v in self.variations.items()
            },
            "policy": cart.policy_to_dict(self.policy),
            "event_count": len(self.events),
        }

    def snapshot(self) -> dict:
        return {
            "format_version": LOG_FORMAT_VERSION,
            "session_id": self.session_id,
            "document": document.document_to_dict(self.document),
            "tree": cart.tree_to_dict(self.tree),
            "tracker": mutants.tracker_to_dict(self.tracker),
            "variations": {
                vid: mutants.variation_to_dict(v) for vid, v in self.variations.items()
            },
            "max_length_ratio": self.max_length_ratio,
            "event_count": len(self.events),
        }

    def state_equals(self, other: "Session") -> bool:
        return (
            self.document == other.document
            and self.tree == other.tree
            and self.tracker == other.tracker
            and self.variations == other.variations
            and self.max_length_ratio == other.max_length_ratio
        )


# --- replay -----------------------------------------------------------------

def replay(events: list[SessionEvent]) -> Session:
    """Rebuild a session purely from its event log.

    Generated content is taken from event payloads, so no provider is
    consulted and reconstruction is deterministic.
    """
    if not events:
        raise CorruptLog("empty event log")
    if events[0].kind != "created":
        raise CorruptLog("log must start with a 'created' event")
    for i, event in enumerate(events):
        if event.kind not in EVENT_KINDS:
            raise CorruptLog(f"unknown event kind {event.kind!r}")
        if event.ordinal != i + 1:
            raise CorruptLog(
                f"ordinal gap: expected {i + 1}, found {event.ordinal}"
            )

    created = events[0].payload
    try:
        policy = cart.policy_from_dict(created["policy"])
        doc = document.create_document(created["text"], doc_id=created["doc_id"])
        session = Session(
            session_id=created["session_id"],
            doc=doc,
            tree=cart.new_tree(policy),
            max_length_ratio=created.get("max_length_ratio", 2.0),
        )
        session.events.append(events[0])

        for event in events[1:]:
            _apply_replayed(session, event)
            session.events.append(event)
    except CorruptLog:
        raise
    except Exception as exc:
        raise CorruptLog(f"invariant violation during replay: {exc}") from exc
    return session


def _apply_replayed(session: Session, event: SessionEvent) -> None:
    payload = event.payload
    kind = event.kind
    if kind == "highlighted":
        span = Span(payload["start"], payload["end"], payload["revision"])
        session.document = document.set_highlight(session.document, span)
    elif kind == "edited":
        result = document.edit(
            session.document,
            payload["at_offset"],
            payload["delete_len"],
            payload["insert"],
        )
        session.document = result.document
    elif kind in ("probed", "reprobed"):
        session.tree = cart.install_roots(session.tree, payload["labels"])
    elif kind == "expanded":
        session.tree = cart.install_children(
            session.tree, payload["node_id"], payload["labels"]
        )
    elif kind == "added_manual":
        session.tree = cart.add_manual(
            session.tree, payload["parent"], payload["label"]
        )
        if not session.tree.has_node(payload["node_id"]):
            raise UnknownNode(f"replayed node id mismatch for {payload['node_id']}")
    elif kind == "selected":
        session.tree = cart.set_selected(session.tree, payload["node_id"], True)
    elif kind == "deselected":
        session.tree = cart.set_selected(session.tree, payload["node_id"], False)
    elif kind == "synthesized":
        variation = mutants.variation_from_dict(payload)
        session.variations[variation.variation_id] = variation
        session.tracker = mutants.append(session.tracker, variation)
    elif kind == "activated":
        session.tracker = mutants.activate(session.tracker, payload["variation_id"])
    elif kind == "accepted":
        session.document, session.tracker = mutants.accept_active(
            session.document, session.tracker, session.variations
        )
    else:
        raise CorruptLog(f"unexpected event kind {kind!r}")


# --- telemetry ---------------------------------------------------------------

@dataclass(frozen=True)
class TelemetrySummary:
    directions_by_depth: dict[int, int] = field(default_factory=dict)
    converged_cardinality: dict[int, int] = field(default_factory=dict)
    manual_added: int = 0
    manual_labels: tuple[str, ...] = ()
    mutants_generated: int = 0
    replacements: int = 0

    def to_dict(self) -> dict:
        return {
            "directions_by_depth": {str(k): v for k, v in sorted(self.directions_by_depth.items())},
            "converged_cardinality": {str(k): v for k, v in sorted(self.converged_cardinality.items())},
            "manual_added": self.manual_added,
            "manual_labels": list(self.manual_labels),
            "mutants_generated": self.mutants_generated,
            "replacements": self.replacements,
        }


def telemetry_from_events(events: list[SessionEvent]) -> TelemetrySummary:
    """Pure aggregation over the log; live state is never consulted."""
    by_depth: dict[int, int] = {}
    cardinality: dict[int, int] = {}
    manual_labels: list[str] = []
    mutants_generated = 0
    replacements = 0
    for event in events:
        if event.kind in ("probed", "reprobed"):
            by_depth[1] = by_depth.get(1, 0) + len(event.payload["labels"])
        elif event.kind == "expanded":
            depth = event.payload["depth"]
            by_depth[depth] = by_depth.get(depth, 0) + len(event.payload["labels"])
        elif event.kind == "added_manual":
            depth = event.payload["depth"]
            by_depth[depth] = by_depth.get(depth, 0) + 1
            manual_labels.append(event.payload["label"])
        elif event.kind == "synthesized":
            k = len(event.payload["direction_paths"])
            cardinality[k] = cardinality.get(k, 0) + 1
            mutants_generated += 1
        elif event.kind == "accepted":
            replacements += 1
    return TelemetrySummary(
        directions_by_depth=by_depth,
        converged_cardinality=cardinality,
        manual_added=len(manual_labels),
        manual_labels=tuple(manual_labels),
        mutants_generated=mutants_generated,
        replacements=replacements,
    )

"""Session store: in-memory registry plus optional durable event logs.

Persistence is an append-only JSONL event log per session (the log is
truth) with a snapshot written alongside as an optimization. Restarting
and replaying any durably flushed prefix yields a consistent session.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from . import session as session_mod
from .cart import ExplorationPolicy
from .errors import CorruptLog, UnknownSession
from .session import Session, SessionEvent


def write_event_line(fh, event: SessionEvent) -> None:
    fh.write(json.dumps(event.to_dict(), ensure_ascii=False) + "\n")
    fh.flush()


def read_event_log(path: str | Path) -> list[SessionEvent]:
    events: list[SessionEvent] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorruptLog(f"line {line_no} is not valid JSON") from exc
            if record.get("v") != session_mod.LOG_FORMAT_VERSION:
                raise CorruptLog(
                    f"line {line_no}: unsupported format version {record.get('v')!r}"
                )
            events.append(SessionEvent.from_dict(record))
    return events


class SessionStore:
    """Registry of live sessions; distinct sessions operate fully in parallel."""

    def __init__(self, data_dir: str | Path | None = None, provider_factory=None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._data_dir = Path(data_dir) if data_dir else None
        self._provider_factory = provider_factory
        if self._data_dir:
            self._data_dir.mkdir(parents=True, exist_ok=True)

    def _log_path(self, session_id: str) -> Path:
        assert self._data_dir is not None
        return self._data_dir / f"{session_id}.events.jsonl"

    def _snapshot_path(self, session_id: str) -> Path:
        assert self._data_dir is not None
        return self._data_dir / f"{session_id}.snapshot.json"

    def _attach_persistence(self, session: Session) -> None:
        if self._data_dir is None:
            return
        log_path = self._log_path(session.session_id)

        def persist(sess: Session, event: SessionEvent) -> None:
            with open(log_path, "a", encoding="utf-8") as fh:
                write_event_line(fh, event)
            self._snapshot_path(sess.session_id).write_text(
                json.dumps(sess.snapshot(), ensure_ascii=False), encoding="utf-8"
            )

        session.add_listener(persist)

    def create(
        self,
        story_text: str,
        policy: ExplorationPolicy | None = None,
        max_length_ratio: float = 2.0,
    ) -> Session:
        provider = self._provider_factory() if self._provider_factory else None
        session = Session.create(
            story_text,
            policy=policy,
            provider=provider,
            max_length_ratio=max_length_ratio,
        )
        # re-log the created event through the persistence hook
        if self._data_dir is not None:
            self._attach_persistence(session)
            with open(self._log_path(session.session_id), "a", encoding="utf-8") as fh:
                write_event_line(fh, session.events[0])
            self._snapshot_path(session.session_id).write_text(
                json.dumps(session.snapshot(), ensure_ascii=False), encoding="utf-8"
            )
        with self._lock:
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            session = self._restore(session_id)
        if session is None:
            raise UnknownSession(f"no session {session_id!r}")
        return session

    def _restore(self, session_id: str) -> Session | None:
        if self._data_dir is None:
            return None
        log_path = self._log_path(session_id)
        if not log_path.is_file():
            return None
        events = read_event_log(log_path)
        session = session_mod.replay(events)
        if self._provider_factory:
            session.provider = self._provider_factory()
        self._attach_persistence(session)
        with self._lock:
            self._sessions[session_id] = session
        return session

    def session_ids(self) -> list[str]:
        with self._lock:
            return sorted(self._sessions)

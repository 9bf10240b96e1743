"""Reading sessions: a scaffolded document plus cursor and view toggles.

Sessions live in memory; when a persist directory is configured each
session is also mirrored to a JSON file and restored on startup.
Mutation is serialized per session via a store-wide lock (sessions are
small and mutations rare).
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import IndexOutOfRange, SessionNotFound
from .pipeline import ScaffoldedSentence, scaffolded_from_dict


@dataclass
class ViewSettings:
    show_keywords: bool = True
    show_pictograms: bool = True

    def to_dict(self) -> dict:
        return {"show_keywords": self.show_keywords, "show_pictograms": self.show_pictograms}


@dataclass
class Session:
    id: str
    document: list[ScaffoldedSentence]
    cursor: int
    settings: ViewSettings
    created_at: str
    language: str

    def view_of(self, index: int) -> dict:
        """The stored sentence filtered by the session's view toggles.

        Stage timings are measurement metadata, not reading content, so
        views of the same text are identical across sessions.
        """
        if not 0 <= index < len(self.document):
            raise IndexOutOfRange(f"index {index} outside [0, {len(self.document)})")
        payload = self.document[index].to_dict(include_timing=False)
        if not self.settings.show_keywords:
            payload["keywords"] = []
        if not self.settings.show_pictograms:
            payload["matches"] = []
        return payload

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "document": [s.to_dict() for s in self.document],
            "cursor": self.cursor,
            "settings": self.settings.to_dict(),
            "created_at": self.created_at,
            "language": self.language,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "Session":
        return cls(
            id=payload["id"],
            document=[scaffolded_from_dict(d) for d in payload["document"]],
            cursor=payload["cursor"],
            settings=ViewSettings(**payload["settings"]),
            created_at=payload["created_at"],
            language=payload["language"],
        )


class SessionStore:
    def __init__(self, persist_dir: Path | str | None = None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.RLock()
        self.persist_dir = Path(persist_dir) if persist_dir else None
        if self.persist_dir and self.persist_dir.is_dir():
            for path in sorted(self.persist_dir.glob("*.json")):
                session = Session.from_dict(json.loads(path.read_text(encoding="utf-8")))
                self._sessions[session.id] = session

    def create(
        self, document: list[ScaffoldedSentence], language: str, settings: ViewSettings | None = None
    ) -> Session:
        session = Session(
            id=uuid.uuid4().hex,
            document=document,
            cursor=0,
            settings=settings or ViewSettings(),
            created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
            language=language,
        )
        with self._lock:
            self._sessions[session.id] = session
            self._persist(session)
        return session

    def get(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise SessionNotFound(f"no session {session_id!r}")
        return session

    def update_settings(self, session_id: str, patch: dict) -> ViewSettings:
        with self._lock:
            session = self.get(session_id)
            for key, value in patch.items():
                if key not in ("show_keywords", "show_pictograms"):
                    raise ValueError(f"unknown setting {key!r}")
                setattr(session.settings, key, bool(value))
            self._persist(session)
            return session.settings

    def set_cursor(self, session_id: str, index: int) -> None:
        with self._lock:
            session = self.get(session_id)
            if not 0 <= index < len(session.document):
                raise IndexOutOfRange(f"index {index} outside [0, {len(session.document)})")
            session.cursor = index
            self._persist(session)

    def _persist(self, session: Session) -> None:
        if not self.persist_dir:
            return
        self.persist_dir.mkdir(parents=True, exist_ok=True)
        path = self.persist_dir / f"{session.id}.json"
        path.write_text(json.dumps(session.to_dict(), ensure_ascii=False), encoding="utf-8")

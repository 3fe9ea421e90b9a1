"""In-memory session store for the interactive revision loop."""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from ..pcm import Pcm
from ..revise import _normalize_pins


@dataclass
class Session:
    id: str
    original: Pcm
    labels: tuple | None = None
    pins: dict = field(default_factory=dict)
    history: list = field(default_factory=list)
    status: str = "open"
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def record(self, kind: str, payload: dict) -> None:
        """Append one event; history is never mutated otherwise."""
        self.history.append({"kind": kind, "payload": payload})

    def set_pins(self, raw_pins: dict) -> dict:
        """Validate and store pins in upper-triangle orientation."""
        n = self.original.n
        for (i, j) in raw_pins:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"pin index ({i + 1}, {j + 1}) out of range")
        merged = dict(self.pins)
        merged.update(raw_pins)
        normalized = _normalize_pins(self.original, merged)
        self.pins = normalized
        return normalized


class SessionStore:
    def __init__(self):
        self._sessions = {}
        self._lock = threading.Lock()

    def create(self, original: Pcm, labels=None) -> Session:
        session = Session(id=uuid.uuid4().hex, original=original, labels=labels)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)

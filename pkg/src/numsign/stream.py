"""Online debouncing of per-frame classifications.

A gesture is reported only once its classification has held for ``window``
consecutive frames; shorter runs are treated as unintentional movement.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .skeleton import Classification

DEFAULT_WINDOW = 5


@dataclass(frozen=True)
class RecognitionEvent:
    digit: int | None  # None = unknown sign
    first_frame: int
    last_frame: int

    @property
    def length(self) -> int:
        return self.last_frame - self.first_frame + 1


class Debouncer:
    """Single-stream debouncer; feed frames in order with :meth:`push`.

    ``push`` returns an event the moment a run reaches ``window`` frames.
    The run keeps extending while the outcome holds; :attr:`events` always
    carries the spans as far as they are known.
    """

    def __init__(self, window: int = DEFAULT_WINDOW):
        if window < 1:
            raise ValueError(f"window must be >= 1, got {window}")
        self.window = window
        self.events: list[RecognitionEvent] = []
        self._frame = -1
        self._key = None
        self._run_start = 0
        self._emitted = False

    def push(self, classification: Classification) -> RecognitionEvent | None:
        self._frame += 1
        key = classification.key()
        if key != self._key:
            self._key = key
            self._run_start = self._frame
            self._emitted = False
        if self._emitted:
            self.events[-1] = replace(self.events[-1], last_frame=self._frame)
            return None
        if self._frame - self._run_start + 1 >= self.window:
            self._emitted = True
            event = RecognitionEvent(classification.digit, self._run_start, self._frame)
            self.events.append(event)
            return event
        return None


def debounce(classifications: Iterable[Classification], window: int = DEFAULT_WINDOW) -> list[RecognitionEvent]:
    """Events over a whole sequence, each spanning its complete stable run."""
    deb = Debouncer(window)
    for c in classifications:
        deb.push(c)
    return deb.events

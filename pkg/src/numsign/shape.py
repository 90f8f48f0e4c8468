"""Hand-shape analysis on a binary edge map.

Palm rectangle from edge histograms, fingertips from a five-token
automaton over the contour skyline, and the extended-thumb test.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePalm, EmptyRegion, NoHand

DEFAULT_BETA = 0.7
DEFAULT_SIDE_RATIO = 0.5
DEFAULT_MIN_EDGE_PIXELS = 50
DEFAULT_MIN_WIDTH_PX = 16
DEFAULT_GAMMA = 0.15


@dataclass(frozen=True)
class PalmRect:
    """Axis-aligned rectangle, all bounds inclusive pixel indices."""

    left: int
    right: int
    top: int
    bottom: int

    @property
    def width(self) -> int:
        return self.right - self.left

    @property
    def height(self) -> int:
        return self.bottom - self.top

    def shifted(self, rows: int = 0, cols: int = 0) -> "PalmRect":
        return PalmRect(self.left + cols, self.right + cols, self.top + rows, self.bottom + rows)

    def as_dict(self) -> dict:
        return {"left": self.left, "right": self.right, "top": self.top, "bottom": self.bottom}


class Axis(enum.Enum):
    COLUMNS = "columns"
    ROWS = "rows"


@dataclass(frozen=True)
class Histogram:
    axis: Axis
    origin: int
    counts: np.ndarray


def edge_histogram(edges: np.ndarray, region: PalmRect, axis: Axis) -> Histogram:
    """Count edge pixels per column (or row) inside ``region``."""
    h, w = edges.shape
    if region.right < region.left or region.bottom < region.top:
        raise EmptyRegion(f"empty region {region}")
    if region.left < 0 or region.top < 0 or region.right >= w or region.bottom >= h:
        raise ValueError(f"region {region} outside a {w}x{h} map")
    window = edges[region.top:region.bottom + 1, region.left:region.right + 1]
    if axis is Axis.COLUMNS:
        return Histogram(axis, region.left, window.sum(axis=0).astype(np.int64))
    return Histogram(axis, region.top, window.sum(axis=1).astype(np.int64))


def _topmost(edges: np.ndarray, below: int | None = None) -> np.ndarray:
    """Per-column smallest row index holding an edge (restricted to rows < below); -1 if none."""
    view = edges if below is None else edges[:max(below, 0)]
    if view.shape[0] == 0:
        return np.full(edges.shape[1], -1, dtype=np.int64)
    present = view.any(axis=0)
    return np.where(present, view.argmax(axis=0), -1)


def detect_palm(
    edges: np.ndarray,
    *,
    beta: float = DEFAULT_BETA,
    side_ratio: float = DEFAULT_SIDE_RATIO,
    min_edge_pixels: int = DEFAULT_MIN_EDGE_PIXELS,
    min_width_px: int = DEFAULT_MIN_WIDTH_PX,
) -> PalmRect:
    """Locate the rectangular palm model.

    bottom is the lowest edge row. left/right are the outermost columns
    whose edge count over the lower half of the hand reaches
    ``side_ratio`` of that half's height, so thin horizontal structures
    such as the thumb do not widen the palm. top is the highest row at
    which the columns in [left, right] whose contour has already begun
    cover at least ``beta`` of the palm width; separated fingers never
    reach that coverage, the palm's top boundary does.
    """
    h, w = edges.shape
    if int(edges.sum()) < min_edge_pixels:
        raise NoHand(f"fewer than {min_edge_pixels} edge pixels")
    rows = np.flatnonzero(edges.any(axis=1))
    first, bottom = int(rows[0]), int(rows[-1])

    mid = (first + bottom) // 2
    lower = edge_histogram(edges, PalmRect(0, w - 1, mid, bottom), Axis.COLUMNS)
    sides = np.flatnonzero(lower.counts >= side_ratio * (bottom - mid + 1))
    if sides.size == 0:
        raise DegeneratePalm("no palm sides found in the lower half")
    left, right = int(sides[0]), int(sides[-1])
    if right - left < min_width_px:
        raise DegeneratePalm(f"palm width {right - left} below {min_width_px}")

    tops = _topmost(edges[:, left:right + 1])
    tops = tops[tops >= 0]
    need = beta * (right - left)
    # coverage at row r = number of columns whose topmost edge is at or above r
    coverage = np.cumsum(np.bincount(tops, minlength=h))
    hits = np.flatnonzero(coverage >= need)
    if hits.size == 0:
        raise DegeneratePalm("no row reaches the palm coverage ratio")
    top = int(hits[0])
    if not top < bottom:
        raise DegeneratePalm(f"palm top {top} not above bottom {bottom}")
    return PalmRect(left, right, top, bottom)


class Token(enum.Enum):
    T1 = 1  # steep ascent
    T2 = 2  # gentle ascent
    T3 = 3  # flat apex
    T4 = 4  # gentle descent
    T5 = 5  # steep descent


@dataclass(frozen=True)
class OperatorToken:
    id: Token
    column: int  # right-hand column of the 2x2 window that produced the token


def skyline(edges: np.ndarray, palm: PalmRect) -> np.ndarray:
    """Topmost edge row strictly above ``palm.top`` for each column in [left, right]; -1 if none."""
    return _topmost(edges[:, palm.left:palm.right + 1], below=palm.top)


def tokenize_skyline(edges: np.ndarray, palm: PalmRect) -> list[OperatorToken]:
    """Translate the skyline above the palm into T1..T5 tokens.

    Columns just outside [left, right] count as absent, so a contour that
    touches the palm boundary still opens with T1 and closes with T5.
    """
    sky = skyline(edges, palm)
    tokens: list[OperatorToken] = []
    prev = -1
    for i, cur in enumerate([*sky.tolist(), -1]):
        col = palm.left + i
        if prev < 0 and cur >= 0:
            tokens.append(OperatorToken(Token.T1, col))
        elif prev >= 0 and cur < 0:
            tokens.append(OperatorToken(Token.T5, col))
        elif prev >= 0 and cur >= 0:
            delta = cur - prev
            if delta <= -2:
                tok = Token.T1
            elif delta == -1:
                tok = Token.T2
            elif delta == 0:
                tok = Token.T3
            elif delta == 1:
                tok = Token.T4
            else:
                tok = Token.T5
            tokens.append(OperatorToken(tok, col))
        prev = cur
    return tokens


class TipState(enum.Enum):
    IDLE = "idle"
    S0 = "s0"
    S1 = "s1"
    S2 = "s2"
    S3 = "s3"
    S4 = "s4"


_TRANSITIONS = {
    (TipState.IDLE, Token.T1): TipState.S0,
    (TipState.IDLE, Token.T2): TipState.S1,
    (TipState.S0, Token.T1): TipState.S0,
    (TipState.S0, Token.T2): TipState.S1,
    (TipState.S0, Token.T3): TipState.S2,
    (TipState.S1, Token.T2): TipState.S1,
    (TipState.S1, Token.T3): TipState.S2,
    (TipState.S2, Token.T3): TipState.S2,
    (TipState.S2, Token.T4): TipState.S3,
    (TipState.S2, Token.T5): TipState.S4,
    (TipState.S3, Token.T4): TipState.S3,
    (TipState.S3, Token.T5): TipState.S4,
}


@dataclass(frozen=True)
class Fingertip:
    row: int
    column: int


@dataclass
class TipAutomaton:
    """Fingertip recogniser: idle -> s0/s1 (ascent) -> s2 (apex) -> s3 (descent) -> s4 (accept)."""

    state: TipState = TipState.IDLE
    apex_start: int = -1
    apex_end: int = -1

    def feed(self, token: OperatorToken) -> tuple[int, int] | None:
        """Advance on one token; returns the apex column span when a tip is accepted."""
        nxt = _TRANSITIONS.get((self.state, token.id))
        if nxt is None:
            # out-of-order token: restart, possibly re-entering on this token
            self.state = TipState.IDLE
            nxt = _TRANSITIONS.get((TipState.IDLE, token.id), TipState.IDLE)
        if nxt is TipState.S2:
            if self.state is TipState.S2:
                self.apex_end = token.column
            else:
                self.apex_start, self.apex_end = token.column - 1, token.column
        self.state = nxt
        if nxt is TipState.S4:
            span = (self.apex_start, self.apex_end)
            self.state = TipState.IDLE
            return span
        return None


def detect_fingertips(edges: np.ndarray, palm: PalmRect) -> list[Fingertip]:
    sky = skyline(edges, palm)
    automaton = TipAutomaton()
    tips = []
    for token in tokenize_skyline(edges, palm):
        span = automaton.feed(token)
        if span is not None:
            start, end = span
            tips.append(Fingertip(int(sky[start - palm.left]), (start + end) // 2))
    return tips


def detect_thumb(edges: np.ndarray, palm: PalmRect, *, gamma: float = DEFAULT_GAMMA) -> bool:
    """True when enough columns right of the palm hold edge pixels within the palm's rows."""
    w = edges.shape[1]
    if palm.right + 1 >= w:
        return False
    region = PalmRect(palm.right + 1, w - 1, palm.top, palm.bottom)
    hist = edge_histogram(edges, region, Axis.COLUMNS)
    return int(np.count_nonzero(hist.counts)) > gamma * palm.width

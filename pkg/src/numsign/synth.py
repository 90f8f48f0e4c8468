"""Deterministic synthetic hand silhouettes used as end-to-end fixtures."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ShapeOutOfFrame
from .skeleton import Vocabulary

FRAME_WIDTH = 320
FRAME_HEIGHT = 240
FOREGROUND = 32
BACKGROUND = 224
MARGIN = 2  # keep the contour clear of the zero-gradient border ring


@dataclass(frozen=True)
class FingerSpec:
    joint: int
    length: int = 50
    width: int = 10
    shift: int = 0  # horizontal offset from the joint abscissa


@dataclass(frozen=True)
class HandSpec:
    palm_width: int = 80
    palm_height: int = 100
    fingers: tuple[FingerSpec, ...] = ()
    thumb: bool = False
    thumb_length: int = 24
    thumb_height: int = 12
    palm_top: int = 100
    palm_left: int = 120
    foreground: int = FOREGROUND
    background: int = BACKGROUND
    rounded: bool = False

    def translated(self, rows: int = 0, cols: int = 0) -> "HandSpec":
        return replace(self, palm_top=self.palm_top + rows, palm_left=self.palm_left + cols)

    def scaled(self, factor: float) -> "HandSpec":
        """Scale every dimension about the palm centre."""
        def s(v):
            return max(1, int(round(v * factor)))

        cy = self.palm_top + self.palm_height / 2
        cx = self.palm_left + self.palm_width / 2
        pw, ph = s(self.palm_width), s(self.palm_height)
        fingers = tuple(
            replace(f, length=s(f.length), width=s(f.width), shift=int(round(f.shift * factor)))
            for f in self.fingers
        )
        return replace(
            self,
            palm_width=pw,
            palm_height=ph,
            palm_top=int(round(cy - ph / 2)),
            palm_left=int(round(cx - pw / 2)),
            fingers=fingers,
            thumb_length=s(self.thumb_length),
            thumb_height=s(self.thumb_height),
        )

    def finger_center(self, finger: FingerSpec) -> int:
        return self.palm_left + ((2 * finger.joint + 1) * self.palm_width + 4) // 8 + finger.shift


def _fill(canvas: np.ndarray, top: int, left: int, height: int, width: int, value: int) -> None:
    h, w = canvas.shape
    if top < MARGIN or left < MARGIN or top + height > h - MARGIN or left + width > w - MARGIN:
        raise ShapeOutOfFrame(
            f"rectangle rows {top}..{top + height - 1} cols {left}..{left + width - 1} "
            f"leaves the {w}x{h} frame")
    canvas[top:top + height, left:left + width] = value


def render_grey(spec: HandSpec, width: int = FRAME_WIDTH, height: int = FRAME_HEIGHT) -> np.ndarray:
    if abs(spec.foreground - spec.background) < 128:
        raise ValueError("foreground/background contrast must be at least 128")
    canvas = np.full((height, width), spec.background, dtype=np.uint8)
    fg = spec.foreground
    _fill(canvas, spec.palm_top, spec.palm_left, spec.palm_height, spec.palm_width, fg)

    for finger in spec.fingers:
        left = spec.finger_center(finger) - finger.width // 2
        top = spec.palm_top - finger.length
        _fill(canvas, top, left, finger.length, finger.width, fg)
        if spec.rounded:
            # 45 degree bevels on both top corners
            bevel = min(finger.width // 3, finger.length // 2)
            for i in range(bevel):
                canvas[top:top + bevel - i, left + i] = spec.background
                canvas[top:top + bevel - i, left + finger.width - 1 - i] = spec.background

    if spec.thumb:
        top = spec.palm_top + spec.palm_height // 2 - spec.thumb_height // 2
        _fill(canvas, top, spec.palm_left + spec.palm_width, spec.thumb_height, spec.thumb_length, fg)
    return canvas


def render(spec: HandSpec, width: int = FRAME_WIDTH, height: int = FRAME_HEIGHT) -> np.ndarray:
    """Render the hand as an RGB frame (grey levels replicated on all channels)."""
    grey = render_grey(spec, width, height)
    return np.repeat(grey[:, :, None], 3, axis=2)


def golden_spec(digit: int, vocab: Vocabulary | None = None, **overrides) -> HandSpec:
    """Hand whose geometry matches ``digit``'s vocabulary signature."""
    vocab = vocab or Vocabulary.default()
    sig = vocab.signature_for(digit)
    fingers = tuple(FingerSpec(j) for j in sorted(sig.joints))
    return HandSpec(fingers=fingers, thumb=sig.thumb, **overrides)

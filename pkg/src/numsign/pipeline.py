"""Configuration and the single-frame recognition pipeline."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import edge, shape, skeleton, stream
from .errors import ConfigError, NoHand, PalmError
from .raster import to_grey
from .skeleton import Classification, Vocabulary


@dataclass(frozen=True)
class Config:
    tau: float = edge.DEFAULT_TAU
    beta: float = shape.DEFAULT_BETA
    side_ratio: float = shape.DEFAULT_SIDE_RATIO
    min_edge_pixels: int = shape.DEFAULT_MIN_EDGE_PIXELS
    min_width_px: int = shape.DEFAULT_MIN_WIDTH_PX
    gamma: float = shape.DEFAULT_GAMMA
    lam: float = skeleton.DEFAULT_LAMBDA
    window: int = stream.DEFAULT_WINDOW

    def updated(self, **changes) -> "Config":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    @classmethod
    def parse(cls, text: str, base: "Config | None" = None) -> "Config":
        """Parse ``key = value`` lines (``#`` comments allowed) over ``base``."""
        types = {f.name: f.type for f in fields(cls)}
        changes = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep or key not in CONFIG_KEYS:
                raise ConfigError(f"line {lineno}: unknown or malformed entry {raw.strip()!r}")
            name = CONFIG_KEYS[key]
            try:
                changes[name] = int(value) if types[name] == "int" else float(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: bad value for {key}: {value.strip()!r}") from None
        return replace(base or cls(), **changes)

    @classmethod
    def load(cls, path: str | Path, base: "Config | None" = None) -> "Config":
        return cls.parse(Path(path).read_text(), base)


CONFIG_KEYS = {
    "edge.tau": "tau",
    "palm.beta": "beta",
    "palm.side_ratio": "side_ratio",
    "palm.min_edge_pixels": "min_edge_pixels",
    "palm.min_width_px": "min_width_px",
    "thumb.gamma": "gamma",
    "skeleton.lambda": "lam",
    "stream.window": "window",
}


@dataclass(frozen=True)
class Analysis:
    """Every intermediate product of one frame, for reporting and overlays."""

    grey: np.ndarray
    edges: np.ndarray
    classification: Classification
    tips: tuple[shape.Fingertip, ...] = ()


def analyze(img: np.ndarray, config: Config | None = None, vocab: Vocabulary | None = None) -> Analysis:
    """Run grey conversion, edge detection, shape analysis and classification."""
    config = config or Config()
    vocab = vocab or Vocabulary.default()
    grey = img if img.ndim == 2 else to_grey(img)
    edges = edge.edge_map(grey, config.tau)
    try:
        palm = shape.detect_palm(
            edges,
            beta=config.beta,
            side_ratio=config.side_ratio,
            min_edge_pixels=config.min_edge_pixels,
            min_width_px=config.min_width_px,
        )
    except PalmError as exc:
        reason = "no_hand" if isinstance(exc, NoHand) else "degenerate_palm"
        return Analysis(grey, edges, Classification(None, None, reason))
    tips = shape.detect_fingertips(edges, palm)
    thumb = shape.detect_thumb(edges, palm, gamma=config.gamma)
    model = skeleton.build_skeleton(palm, tips, thumb, lam=config.lam)
    return Analysis(grey, edges, skeleton.classify(model, vocab), tuple(tips))


def recognize(img: np.ndarray, config: Config | None = None, vocab: Vocabulary | None = None) -> Classification:
    return analyze(img, config, vocab).classification

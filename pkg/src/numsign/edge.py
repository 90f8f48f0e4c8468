"""Sobel gradient magnitude and edge thresholding.

Neighbourhood layout around the centre pixel g0::

    g2 g1 g8
    g3 g0 g7
    g4 g5 g6

    d1 = 1/4 [(g4 + 2 g5 + g6) - (g2 + 2 g1 + g8)]
    d2 = 1/4 [(g8 + 2 g7 + g6) - (g2 + 2 g3 + g4)]
    g' = sqrt(1/2 (d1^2 + d2^2))
"""

from __future__ import annotations

import numpy as np

from .errors import ImageTooSmall

DEFAULT_TAU = 40.0


def gradient(grey: np.ndarray) -> np.ndarray:
    """Gradient magnitude field (float64); the one-pixel border ring is 0."""
    grey = np.asarray(grey)
    if grey.ndim != 2:
        raise ValueError(f"expected a 2-d grey image, got shape {grey.shape}")
    h, w = grey.shape
    if h < 3 or w < 3:
        raise ImageTooSmall(f"gradient needs at least 3x3 pixels, got {w}x{h}")
    g = grey.astype(np.float64)

    g2, g1, g8 = g[:-2, :-2], g[:-2, 1:-1], g[:-2, 2:]
    g3, g7 = g[1:-1, :-2], g[1:-1, 2:]
    g4, g5, g6 = g[2:, :-2], g[2:, 1:-1], g[2:, 2:]

    d1 = ((g4 + 2 * g5 + g6) - (g2 + 2 * g1 + g8)) / 4
    d2 = ((g8 + 2 * g7 + g6) - (g2 + 2 * g3 + g4)) / 4

    field = np.zeros((h, w), dtype=np.float64)
    field[1:-1, 1:-1] = np.sqrt((d1 * d1 + d2 * d2) / 2)
    return field


def threshold_edges(field: np.ndarray, tau: float = DEFAULT_TAU) -> np.ndarray:
    """Boolean edge map: strictly greater than ``tau``."""
    if tau < 0:
        raise ValueError(f"tau must be non-negative, got {tau}")
    return np.asarray(field) > tau


def edge_map(grey: np.ndarray, tau: float = DEFAULT_TAU) -> np.ndarray:
    return threshold_edges(gradient(grey), tau)

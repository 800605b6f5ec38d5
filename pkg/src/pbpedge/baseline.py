"""Sobel gradient baseline for side-by-side comparison."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .preprocess import as_gray

__all__ = ["GradientField", "SOBEL_X", "SOBEL_Y", "sobel", "sobel_mask"]

SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.int64)
SOBEL_Y = SOBEL_X.T.copy()


@dataclass(frozen=True, eq=False)
class GradientField:
    gx: np.ndarray
    gy: np.ndarray
    magnitude: np.ndarray

    def direction(self) -> np.ndarray:
        """Gradient angle in radians, ``atan2(gy, gx)``."""
        return np.arctan2(self.gy, self.gx)


def sobel(img) -> GradientField:
    """Sobel gradients with replicated borders.

    The kernels are applied as correlations, so ``gx`` is positive where
    intensity grows to the right and ``gy`` where it grows downwards.
    """
    a = as_gray(img).astype(np.int64)
    if a.shape[0] < 3 or a.shape[1] < 3:
        raise ValueError(f"image {a.shape} too small for 3x3 Sobel kernels")
    gx = ndimage.correlate(a, SOBEL_X, mode="nearest")
    gy = ndimage.correlate(a, SOBEL_Y, mode="nearest")
    mag = np.floor(np.sqrt((gx * gx + gy * gy).astype(np.float64)) + 0.5).astype(np.int64)
    return GradientField(gx, gy, mag)


def sobel_mask(g: GradientField, t: float) -> np.ndarray:
    if t < 0:
        raise ValueError("threshold must be nonnegative")
    return np.where(g.magnitude > t, 255, 0).astype(np.uint8)

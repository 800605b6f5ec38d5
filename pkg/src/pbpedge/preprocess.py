"""Grayscale conversion, Gaussian smoothing and intensity quantization."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

__all__ = [
    "PreprocessConfig",
    "QuantizationWarning",
    "QuantizedImage",
    "as_gray",
    "bin_representatives",
    "dequantize",
    "gaussian_blur",
    "gaussian_kernel",
    "preprocess",
    "quantize",
    "to_gray",
]

QUANTIZERS = ("uniform", "quantile")


class QuantizationWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PreprocessConfig:
    sigma: float = 1.0
    levels: int = 10
    quantizer: str = "uniform"

    def __post_init__(self):
        if not math.isfinite(self.sigma) or self.sigma < 0:
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma}")
        if not 2 <= self.levels <= 256:
            raise ValueError(f"levels must be in [2, 256], got {self.levels}")
        if self.quantizer not in QUANTIZERS:
            raise ValueError(f"quantizer must be one of {QUANTIZERS}, got {self.quantizer!r}")


@dataclass(frozen=True)
class QuantizedImage:
    pixels: np.ndarray
    levels: int

    def __post_init__(self):
        if self.pixels.ndim != 2:
            raise ValueError("quantized image must be 2-D")
        if self.pixels.size and (self.pixels.min() < 0 or self.pixels.max() >= self.levels):
            raise ValueError(f"pixels must lie in [0, {self.levels - 1}]")

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape


def _round_half_up(x: np.ndarray) -> np.ndarray:
    # inputs here are nonnegative, so half-up is half-away-from-zero
    return np.floor(x + 0.5)


def as_gray(img) -> np.ndarray:
    """Check that ``img`` is a 2-D image with values in [0, 255]; return it as uint8."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"grayscale image must be 2-D, got shape {arr.shape}")
    if arr.dtype == np.uint8:
        return arr
    if arr.dtype.kind not in "iu":
        raise ValueError(f"grayscale pixels must be integers, got {arr.dtype}")
    if arr.size and (arr.min() < 0 or arr.max() > 255):
        raise ValueError("grayscale pixels must lie in [0, 255]")
    return arr.astype(np.uint8)


def to_gray(rgb) -> np.ndarray:
    """BT.601 luma of an 8-bit RGB(A) image; 2-D input is passed through.

    Uses exact integer arithmetic: ``(299 R + 587 G + 114 B + 500) // 1000``.
    """
    arr = np.asarray(rgb)
    if arr.ndim == 2:
        return as_gray(arr)
    if arr.ndim != 3 or arr.shape[2] not in (3, 4):
        raise ValueError(f"expected an HxWx3 or HxWx4 image, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if arr.dtype.kind not in "iu" or (arr.size and (arr.min() < 0 or arr.max() > 255)):
            raise ValueError(f"unsupported channel depth: {arr.dtype}, expected 8-bit channels")
    c = arr[..., :3].astype(np.int64)
    luma = (299 * c[..., 0] + 587 * c[..., 1] + 114 * c[..., 2] + 500) // 1000
    return np.clip(luma, 0, 255).astype(np.uint8)


def gaussian_kernel(sigma: float) -> np.ndarray:
    radius = math.ceil(3 * sigma)
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    k = np.exp(-(x**2) / (2 * sigma**2))
    return k / k.sum()


def _blur_float(img: np.ndarray, sigma: float) -> np.ndarray:
    k = gaussian_kernel(sigma)
    out = ndimage.correlate1d(img.astype(np.float64), k, axis=0, mode="nearest")
    return ndimage.correlate1d(out, k, axis=1, mode="nearest")


def gaussian_blur(img, sigma: float) -> np.ndarray:
    """Separable Gaussian blur with replicated borders, rounded back to uint8."""
    img = as_gray(img)
    if not math.isfinite(sigma) or sigma < 0:
        raise ValueError(f"sigma must be finite and >= 0, got {sigma}")
    if sigma == 0:
        return img.copy()
    out = _round_half_up(_blur_float(img, sigma))
    return np.clip(out, 0, 255).astype(np.uint8)


def quantize(img, levels: int = 10, quantizer: str = "uniform") -> QuantizedImage:
    """Reduce 256 gray levels to ``levels`` bins.

    ``uniform`` maps ``v`` to ``v * levels // 256``. ``quantile`` places
    ``levels - 1`` thresholds at the empirical quantiles ``k / levels`` of
    the pixel values; a value equal to a threshold goes to the lower bin.
    An image with a single gray value has no usable quantiles and falls
    back to ``uniform`` with a :class:`QuantizationWarning`.
    """
    img = as_gray(img)
    if not 2 <= levels <= 256:
        raise ValueError(f"levels must be in [2, 256], got {levels}")
    if quantizer not in QUANTIZERS:
        raise ValueError(f"quantizer must be one of {QUANTIZERS}, got {quantizer!r}")
    v = img.astype(np.int64)
    if quantizer == "quantile":
        if img.size and img.min() != img.max():
            qs = np.arange(1, levels) / levels
            thresholds = np.quantile(v, qs, method="inverted_cdf")
            q = np.searchsorted(thresholds, v, side="left")
            return QuantizedImage(q.astype(np.int64), levels)
        warnings.warn(
            "degenerate histogram, falling back to uniform quantization",
            QuantizationWarning,
            stacklevel=2,
        )
    return QuantizedImage(v * levels // 256, levels)


def bin_representatives(levels: int) -> np.ndarray:
    """Smallest gray value of each uniform bin; ``quantize`` maps it back to its bin."""
    return -((-np.arange(levels) * 256) // levels)


def dequantize(q: QuantizedImage) -> np.ndarray:
    return bin_representatives(q.levels)[q.pixels].astype(np.uint8)


def preprocess(img, config: PreprocessConfig = PreprocessConfig()) -> QuantizedImage:
    """gray -> blur -> quantize."""
    gray = to_gray(img)
    return quantize(gaussian_blur(gray, config.sigma), config.levels, config.quantizer)

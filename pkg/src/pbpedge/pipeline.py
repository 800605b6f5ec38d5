"""End-to-end detection and Sobel comparison."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baseline import sobel, sobel_mask
from .preprocess import PreprocessConfig, QuantizedImage, gaussian_blur, quantize, to_gray
from .scanner import DegreeMap, ScanConfig, classify_map, hysteresis_filter, scan

__all__ = ["Comparison", "Detection", "DEFAULT_SOBEL_THRESHOLD", "compare", "detect"]

DEFAULT_SOBEL_THRESHOLD = 100


@dataclass(frozen=True, eq=False)
class Detection:
    mask: np.ndarray
    degree_map: DegreeMap
    quantized: QuantizedImage
    blurred: np.ndarray


@dataclass(frozen=True, eq=False)
class Comparison:
    pbp_mask: np.ndarray
    sobel_mask: np.ndarray
    diff: np.ndarray
    report: dict


def detect(
    image,
    pre: PreprocessConfig = PreprocessConfig(),
    cfg: ScanConfig = ScanConfig(),
    workers: int = 1,
    backend: str | None = None,
) -> Detection:
    """gray -> blur -> quantize -> scan -> (hysteresis) -> classify.

    With hysteresis the degree map is filtered first and the mask keeps every
    surviving cell, i.e. it is classified against the low threshold.
    """
    blurred = gaussian_blur(to_gray(image), pre.sigma)
    q = quantize(blurred, pre.levels, pre.quantizer)
    dm = scan(q, cfg, workers=workers, backend=backend)
    if cfg.hysteresis is not None:
        low, high = cfg.hysteresis
        mask = classify_map(hysteresis_filter(dm, low, high), low)
    else:
        mask = classify_map(dm, cfg.p)
    return Detection(mask, dm, q, blurred)


def compare(
    image,
    pre: PreprocessConfig = PreprocessConfig(),
    cfg: ScanConfig = ScanConfig(),
    sobel_threshold: float = DEFAULT_SOBEL_THRESHOLD,
    workers: int = 1,
    backend: str | None = None,
) -> Comparison:
    """Run both detectors on the same blurred image and summarise their overlap.

    ``agreement`` is the fraction of pixels on which the two masks agree;
    ``iou`` is the intersection over union of the edge pixels (1.0 when both
    masks are empty).
    """
    det = detect(image, pre, cfg, workers=workers, backend=backend)
    smask = sobel_mask(sobel(det.blurred), sobel_threshold)
    a, b = det.mask > 0, smask > 0
    union = int((a | b).sum())
    report = {
        "pbp_edge_px": int(a.sum()),
        "sobel_edge_px": int(b.sum()),
        "agreement": float((a == b).mean()),
        "iou": float((a & b).sum() / union) if union else 1.0,
    }
    diff = np.where(a != b, 255, 0).astype(np.uint8)
    return Comparison(det.mask, smask, diff, report)

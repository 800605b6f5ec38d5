"""Patch scanning: degree maps, edge masks, hysteresis and equivalence groups."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from . import kernels
from .polynomial import PseudoBooleanPolynomial, matrix_polynomial
from .preprocess import QuantizedImage

__all__ = [
    "DegreeMap",
    "ScanConfig",
    "classify_map",
    "group_equivalent",
    "hysteresis_filter",
    "patch_at",
    "patch_degree",
    "scan",
]

COMBINE_RULES = ("max", "both")


@dataclass(frozen=True)
class ScanConfig:
    """Patch geometry and classification settings.

    ``combine="max"`` scores a patch by the larger of its two orientation
    degrees. ``combine="both"`` scores it by the smaller, so a patch is an
    edge only when both orientations exceed ``p``.
    """

    patch_height: int = 6
    patch_width: int = 6
    stride: int = 1
    p: int = 3
    combine: str = "max"
    hysteresis: tuple[int, int] | None = None

    def __post_init__(self):
        if self.patch_height < 2 or self.patch_width < 2:
            raise ValueError("patch dimensions must be at least 2")
        if self.stride < 1:
            raise ValueError("stride must be at least 1")
        if self.p < 0:
            raise ValueError("degree threshold p must be nonnegative")
        if self.combine not in COMBINE_RULES:
            raise ValueError(f"combine must be one of {COMBINE_RULES}, got {self.combine!r}")
        if self.hysteresis is not None:
            low, high = self.hysteresis
            if not 0 <= low < high:
                raise ValueError(f"hysteresis needs 0 <= low < high, got {low},{high}")

    @property
    def patch_shape(self) -> tuple[int, int]:
        return (self.patch_height, self.patch_width)


@dataclass(frozen=True, eq=False)
class DegreeMap:
    """Per-position patch degrees plus the geometry needed to map them back to pixels."""

    values: np.ndarray
    patch_shape: tuple[int, int]
    stride: int
    image_shape: tuple[int, int]
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def coverage(self) -> tuple[int, int]:
        """Pixel rows/cols reached by some patch; the rest is skipped border."""
        rows, cols = self.values.shape
        h, w = self.patch_shape
        return ((rows - 1) * self.stride + h, (cols - 1) * self.stride + w)

    def with_values(self, values: np.ndarray) -> DegreeMap:
        return DegreeMap(values, self.patch_shape, self.stride, self.image_shape, dict(self.meta))


def _pixels(img) -> np.ndarray:
    if isinstance(img, QuantizedImage):
        return img.pixels
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {arr.shape}")
    return arr


def patch_at(img, row: int, col: int, cfg: ScanConfig) -> np.ndarray:
    """Read-only ``patch_height x patch_width`` view with top-left corner at ``(row, col)``."""
    a = _pixels(img)
    h, w = cfg.patch_shape
    if row < 0 or col < 0 or row + h > a.shape[0] or col + w > a.shape[1]:
        raise IndexError(f"patch {h}x{w} at ({row}, {col}) falls outside image {a.shape}")
    view = a[row : row + h, col : col + w]
    view = view.view()
    view.setflags(write=False)
    return view


def patch_degree(c, combine: str = "max") -> int:
    """Degree of the patch polynomial, combined over the patch and its transpose.

    Goes through the full polynomial construction; the scan kernels are
    checked against this.
    """
    dv = matrix_polynomial(c).degree
    dh = matrix_polynomial(np.asarray(c).T).degree
    if combine == "max":
        return max(dv, dh)
    if combine == "both":
        return min(dv, dh)
    raise ValueError(f"combine must be one of {COMBINE_RULES}, got {combine!r}")


def scan(img, cfg: ScanConfig = ScanConfig(), workers: int = 1, backend: str | None = None) -> DegreeMap:
    """Degree of every full patch at the configured stride, in row-major grid order.

    Trailing rows/columns that cannot hold a whole patch are skipped.
    """
    a = _pixels(img)
    h, w = cfg.patch_shape
    if a.shape[0] < h or a.shape[1] < w:
        raise ValueError(f"image {a.shape} is smaller than the {h}x{w} patch")
    if a.size and a.min() < 0:
        raise ValueError("pixel values must be nonnegative")
    rule = "max" if cfg.combine == "max" else "min"
    values = kernels.degree_grid(a, h, w, cfg.stride, rule, workers=workers, backend=backend)
    dm = DegreeMap(values, cfg.patch_shape, cfg.stride, a.shape)
    dm.meta.update(coverage=dm.coverage, backend=backend or kernels.DEFAULT_BACKEND)
    return dm


def classify_map(dm: DegreeMap, p: int) -> np.ndarray:
    """Edge mask (0/255) where every pixel under some patch with degree > ``p`` is set."""
    if p < 0:
        raise ValueError("degree threshold p must be nonnegative")
    H, W = dm.image_shape
    h, w = dm.patch_shape
    rr, cc = np.nonzero(dm.values > p)
    y0, x0 = rr * dm.stride, cc * dm.stride
    # 2-D difference array; cumulative sums give per-pixel cover counts
    acc = np.zeros((H + 1, W + 1), dtype=np.int64)
    np.add.at(acc, (y0, x0), 1)
    np.add.at(acc, (y0 + h, x0), -1)
    np.add.at(acc, (y0, x0 + w), -1)
    np.add.at(acc, (y0 + h, x0 + w), 1)
    cover = acc.cumsum(axis=0).cumsum(axis=1)[:H, :W]
    return np.where(cover > 0, 255, 0).astype(np.uint8)


def hysteresis_filter(dm: DegreeMap, p_low: int, p_high: int) -> DegreeMap:
    """Keep strong cells (d > p_high) and weak cells (p_low < d <= p_high) 8-connected to them."""
    if not p_low < p_high:
        raise ValueError("hysteresis needs p_low < p_high")
    d = dm.values
    strong = d > p_high
    candidate = d > p_low
    labels, n = ndimage.label(candidate, structure=np.ones((3, 3), dtype=bool))
    keep_labels = np.zeros(n + 1, dtype=bool)
    keep_labels[np.unique(labels[strong])] = True
    keep_labels[0] = False
    return dm.with_values(np.where(keep_labels[labels], d, 0))


def group_equivalent(img, cfg: ScanConfig = ScanConfig()) -> list[tuple[PseudoBooleanPolynomial, list[tuple[int, int]]]]:
    """Partition patch positions by their reduced (non-transposed) polynomial.

    Returns ``(polynomial, positions)`` pairs; groups appear in order of first
    occurrence and positions within a group in scan order. Positions are the
    top-left pixel coordinates of each patch.
    """
    a = _pixels(img)
    h, w = cfg.patch_shape
    if a.shape[0] < h or a.shape[1] < w:
        raise ValueError(f"image {a.shape} is smaller than the {h}x{w} patch")
    groups: dict[PseudoBooleanPolynomial, list[tuple[int, int]]] = {}
    for r in range(0, a.shape[0] - h + 1, cfg.stride):
        for c in range(0, a.shape[1] - w + 1, cfg.stride):
            poly = matrix_polynomial(a[r : r + h, c : c + w])
            groups.setdefault(poly, []).append((r, c))
    return list(groups.items())

"""Edge detection from the degrees of pseudo-Boolean polynomials over image patches."""

__version__ = "0.1.0"

from .polynomial import (
    Label,
    Monomial,
    PseudoBooleanPolynomial,
    build_polynomial,
    canonical_equal,
    classify,
    degree,
    delta_matrix,
    evaluate,
    matrix_polynomial,
    permutation_matrix,
    sort_columns,
    truncate,
)
from .preprocess import PreprocessConfig, QuantizedImage, gaussian_blur, preprocess, quantize, to_gray
from .scanner import DegreeMap, ScanConfig, classify_map, group_equivalent, hysteresis_filter, patch_at, patch_degree, scan
from .baseline import GradientField, sobel, sobel_mask
from .pipeline import compare, detect

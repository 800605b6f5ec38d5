"""Backend selection for the dense patch-degree scan.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy fallback. Set ``PBPEDGE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _fallback

try:
    if os.environ.get("PBPEDGE_PURE_PYTHON"):
        raise ImportError("compiled kernels disabled by PBPEDGE_PURE_PYTHON")
    from . import _kernels
except ImportError:
    _kernels = None

BACKENDS = {"python": _fallback}
if _kernels is not None:
    BACKENDS["compiled"] = _kernels

DEFAULT_BACKEND = "compiled" if _kernels is not None else "python"


def degree_grid(
    img: np.ndarray,
    h: int,
    w: int,
    stride: int = 1,
    combine: str = "max",
    workers: int = 1,
    backend: str | None = None,
) -> np.ndarray:
    """Combined vertical/horizontal polynomial degree for every patch position.

    ``combine="max"`` keeps the larger of the two orientation degrees,
    ``combine="min"`` the smaller. With ``workers > 1`` grid rows are split
    into contiguous bands, each written by exactly one thread, so the result
    does not depend on scheduling.
    """
    mod = BACKENDS[backend or DEFAULT_BACKEND]
    if combine not in ("max", "min"):
        raise ValueError(f"unknown combine rule {combine!r}")
    img = np.ascontiguousarray(img, dtype=np.int64)
    rows = (img.shape[0] - h) // stride + 1
    cols = (img.shape[1] - w) // stride + 1
    out = np.zeros((rows, cols), dtype=np.int64)
    use_min = combine == "min"
    if workers <= 1 or rows < 2:
        mod.degree_rows(img, h, w, stride, use_min, 0, rows, out)
        return out
    n = min(workers, rows)
    bounds = np.linspace(0, rows, n + 1).astype(int)
    with ThreadPoolExecutor(max_workers=n) as pool:
        futures = [
            pool.submit(mod.degree_rows, img, h, w, stride, use_min, int(a), int(b), out)
            for a, b in zip(bounds[:-1], bounds[1:])
        ]
        for f in futures:
            f.result()
    return out

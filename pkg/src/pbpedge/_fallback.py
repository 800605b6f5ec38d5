"""Numpy implementation of the patch-degree kernel, used when the compiled one is absent."""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

# bounds the temporary boolean arrays to a few MB per band
_BAND_CELLS = 1 << 22


def degree_rows(img, h, w, stride, use_min, row_start, row_stop, out):
    if row_stop <= row_start:
        return
    windows = sliding_window_view(img, (h, w))[::stride, ::stride]
    band = max(1, _BAND_CELLS // max(1, windows.shape[1] * h * w))
    for r in range(row_start, row_stop, band):
        win = windows[r : min(r + band, row_stop)]
        dv = (win < win.max(axis=2, keepdims=True)).sum(axis=2).max(axis=-1)
        dh = (win < win.max(axis=3, keepdims=True)).sum(axis=3).max(axis=-1)
        out[r : r + win.shape[0]] = np.minimum(dv, dh) if use_min else np.maximum(dv, dh)

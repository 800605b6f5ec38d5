"""Independent reference computations used only by the tests.

Nothing here imports the package; each function recomputes its quantity
from first principles with plain Python.
"""

import itertools
import math
from collections import deque


def stable_order(column):
    """1-based row indices sorting ``column`` non-decreasingly, ties by row."""
    return [i + 1 for i, _ in sorted(enumerate(column), key=lambda t: (t[1], t[0]))]


def eq1_column_value(column, y):
    """Unaggregated per-column polynomial, evaluated term by term."""
    order = stable_order(column)
    vals = [column[i - 1] for i in order]
    total = vals[0]
    for k in range(1, len(vals)):
        prod = 1
        for r in range(k):
            prod *= y[order[r] - 1]
        total += (vals[k] - vals[k - 1]) * prod
    return total


def eq1_matrix_value(matrix, y):
    cols = list(zip(*matrix))
    return sum(eq1_column_value(col, y) for col in cols)


def closed_form_value(matrix, y):
    """Each column contributes its smallest entry among rows with y_i = 0, or its max if none."""
    total = 0
    for col in zip(*matrix):
        free = [v for v, yi in zip(col, y) if not yi]
        total += min(free) if free else max(col)
    return total


def all_boolean_vectors(m):
    return itertools.product((0, 1), repeat=m)


def eq1_terms(matrix):
    """Aggregated {variable tuple: coefficient} built directly from the definition."""
    terms = {}
    for col in zip(*matrix):
        order = stable_order(col)
        vals = [col[i - 1] for i in order]
        for r in range(len(vals)):
            coef = vals[r] - (vals[r - 1] if r else 0)
            if coef:
                key = tuple(sorted(order[:r]))
                terms[key] = terms.get(key, 0) + coef
    return terms


def degree_from_terms(terms):
    return max((len(k) for k, v in terms.items() if v), default=0)


def brute_patch_degree(patch, combine="max"):
    rows = [list(r) for r in patch]
    dv = degree_from_terms(eq1_terms(rows))
    dh = degree_from_terms(eq1_terms([list(c) for c in zip(*rows)]))
    return max(dv, dh) if combine == "max" else min(dv, dh)


def brute_degree_map(img, h, w, stride, combine="max"):
    H, W = len(img), len(img[0])
    out = []
    for r in range(0, H - h + 1, stride):
        row = []
        for c in range(0, W - w + 1, stride):
            row.append(brute_patch_degree([img[i][c : c + w] for i in range(r, r + h)], combine))
        out.append(row)
    return out


def dense_gaussian(img, sigma):
    """Direct 2-D convolution with the outer-product kernel and clamped indices (floats)."""
    radius = math.ceil(3 * sigma)
    k1 = [math.exp(-(x * x) / (2 * sigma * sigma)) for x in range(-radius, radius + 1)]
    s = sum(k1)
    k1 = [v / s for v in k1]
    H, W = len(img), len(img[0])
    out = [[0.0] * W for _ in range(H)]
    for i in range(H):
        for j in range(W):
            acc = 0.0
            for a in range(-radius, radius + 1):
                ii = min(max(i + a, 0), H - 1)
                for b in range(-radius, radius + 1):
                    jj = min(max(j + b, 0), W - 1)
                    acc += k1[a + radius] * k1[b + radius] * img[ii][jj]
            out[i][j] = acc
    return out


def flood_hysteresis(grid, low, high):
    """BFS from every strong cell through 8-connected cells above ``low``."""
    H, W = len(grid), len(grid[0])
    keep = [[False] * W for _ in range(H)]
    q = deque((i, j) for i in range(H) for j in range(W) if grid[i][j] > high)
    for i, j in q:
        keep[i][j] = True
    while q:
        i, j = q.popleft()
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                a, b = i + di, j + dj
                if 0 <= a < H and 0 <= b < W and not keep[a][b] and grid[a][b] > low:
                    keep[a][b] = True
                    q.append((a, b))
    return [[grid[i][j] if keep[i][j] else 0 for j in range(W)] for i in range(H)]


def footprint_mask(values, p, patch, stride, shape):
    """Pixel mask by painting each edge patch's footprint one at a time."""
    H, W = shape
    h, w = patch
    mask = [[0] * W for _ in range(H)]
    for r, row in enumerate(values):
        for c, d in enumerate(row):
            if d > p:
                for i in range(r * stride, r * stride + h):
                    for j in range(c * stride, c * stride + w):
                        mask[i][j] = 255
    return mask


def sobel_at(img, i, j):
    """Sobel gx, gy at one pixel with clamped borders."""
    H, W = len(img), len(img[0])

    def px(a, b):
        return img[min(max(a, 0), H - 1)][min(max(b, 0), W - 1)]

    gx = (px(i - 1, j + 1) + 2 * px(i, j + 1) + px(i + 1, j + 1)) - (px(i - 1, j - 1) + 2 * px(i, j - 1) + px(i + 1, j - 1))
    gy = (px(i + 1, j - 1) + 2 * px(i + 1, j) + px(i + 1, j + 1)) - (px(i - 1, j - 1) + 2 * px(i - 1, j) + px(i - 1, j + 1))
    return gx, gy

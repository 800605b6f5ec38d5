"""Matrices and expected reductions quoted from the method's worked examples."""

WORKED = [
    [8, 8, 8, 5],
    [12, 7, 5, 7],
    [18, 2, 3, 1],
    [5, 18, 9, 8],
]
WORKED_PI = [[4, 3, 3, 3], [1, 2, 2, 1], [2, 1, 1, 2], [3, 4, 4, 4]]
WORKED_SORTED = [[5, 2, 3, 1], [8, 7, 5, 5], [12, 8, 8, 7], [18, 18, 9, 8]]
WORKED_DELTA = [[5, 2, 3, 1], [3, 5, 2, 4], [4, 1, 3, 2], [6, 10, 1, 1]]
WORKED_TEXT = "11 + 11*y3 + 3*y4 + 2*y1*y3 + 4*y2*y3 + 4*y1*y4 + 12*y1*y2*y3 + 6*y1*y2*y4"

EQUIV_A = [
    [138, 138, 138, 136],
    [139, 139, 138, 137],
    [142, 141, 139, 138],
    [142, 140, 139, 138],
]
EQUIV_B = [
    [136, 136, 138, 140],
    [138, 137, 138, 140],
    [140, 139, 140, 141],
    [139, 139, 140, 141],
]
EQUIV_TEXT = "550 + 3*y1 + 6*y1*y2 + 1*y1*y2*y4"

C_A = [[99] * 4 for _ in range(4)]
C_B = [[254, 254, 19, 84] for _ in range(4)]
C_C = [[254, 254, 6, 17]] * 3 + [[254, 254, 6, 123]]
C_D = [[254, 254, 6, 17]] + [[254, 254, 6, 123]] * 3

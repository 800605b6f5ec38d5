"""Penalty-based pseudo-Boolean polynomials built from integer cost matrices.

A cost matrix ``C`` (m rows, n columns) is turned into a polynomial in the
Boolean variables ``y1..ym``: every column is sorted, its first differences
become coefficients, and the coefficient at sorted position ``r`` multiplies
the product of the variables of the ``r - 1`` rows sorted before it. Terms
with equal variable sets are summed over all columns.

Variable and row indices are 1-based throughout, matching the ``y<i>`` names
of the text serialization.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "Label",
    "Monomial",
    "PseudoBooleanPolynomial",
    "as_cost_matrix",
    "build_polynomial",
    "canonical_equal",
    "classify",
    "degree",
    "delta_matrix",
    "evaluate",
    "matrix_polynomial",
    "permutation_matrix",
    "sort_columns",
    "truncate",
]

_INT64_MAX = int(np.iinfo(np.int64).max)


class Label(str, enum.Enum):
    EDGE = "edge"
    BLOB = "blob"


def as_cost_matrix(c) -> np.ndarray:
    """Validate ``c`` and return it as a read-only ``int64`` array.

    Raises ``ValueError`` for empty, non-2-D, non-integer or negative input and
    ``OverflowError`` when a column sum could exceed 64 bits.
    """
    arr = np.asarray(c)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"cost matrix must be a non-empty 2-D array, got shape {arr.shape}")
    if arr.dtype == object:
        if not all(isinstance(v, (int, np.integer)) and not isinstance(v, bool) for v in arr.flat):
            raise ValueError("cost matrix entries must be integers")
        if any(v < 0 for v in arr.flat):
            raise ValueError("cost matrix entries must be nonnegative")
        if max(int(v) for v in arr.flat) > _INT64_MAX // arr.shape[0]:
            raise OverflowError("cost matrix entries too large for 64-bit column sums")
        arr = arr.astype(np.int64)
    elif arr.dtype.kind not in "iu":
        raise ValueError(f"cost matrix entries must be integers, got dtype {arr.dtype}")
    if arr.dtype.kind == "i" and arr.min() < 0:
        raise ValueError("cost matrix entries must be nonnegative")
    if int(arr.max()) > _INT64_MAX // arr.shape[0]:
        raise OverflowError("cost matrix entries too large for 64-bit column sums")
    out = np.array(arr, dtype=np.int64, copy=True)
    out.setflags(write=False)
    return out


def permutation_matrix(c) -> np.ndarray:
    """Per-column row orderings (1-based) that sort ``c`` non-decreasingly.

    Ties keep the lower original row first.
    """
    c = as_cost_matrix(c)
    pi = np.argsort(c, axis=0, kind="stable") + 1
    pi.setflags(write=False)
    return pi


def _check_permutation(pi: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    pi = np.asarray(pi)
    if pi.shape != shape:
        raise ValueError(f"dimension mismatch: permutation {pi.shape} vs matrix {shape}")
    expected = np.arange(1, shape[0] + 1)
    if not (np.sort(pi, axis=0) == expected[:, None]).all():
        raise ValueError("every permutation column must be a permutation of 1..m")
    return pi


def sort_columns(c, pi) -> np.ndarray:
    c = as_cost_matrix(c)
    pi = _check_permutation(pi, c.shape)
    out = np.take_along_axis(c, pi - 1, axis=0)
    out.setflags(write=False)
    return out


def delta_matrix(sorted_c) -> np.ndarray:
    """First differences down each column, keeping the column minimum on top."""
    s = as_cost_matrix(sorted_c)
    delta = np.diff(s, axis=0, prepend=0)
    bad = np.nonzero((delta[1:] < 0).any(axis=0))[0]
    if bad.size:
        raise ValueError(f"column {int(bad[0]) + 1} is not sorted non-decreasingly")
    delta.setflags(write=False)
    return delta


@dataclass(frozen=True)
class Monomial:
    coefficient: int
    variables: tuple[int, ...] = ()

    def __post_init__(self):
        if self.coefficient <= 0:
            raise ValueError("monomial coefficients must be positive")
        vs = tuple(self.variables)
        if list(vs) != sorted(set(vs)) or any(v < 1 for v in vs):
            raise ValueError(f"variables must be strictly ascending 1-based indices, got {vs}")
        object.__setattr__(self, "variables", vs)

    @property
    def degree(self) -> int:
        return len(self.variables)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return _order(self.variables)

    def __str__(self) -> str:
        return "*".join([str(self.coefficient)] + [f"y{v}" for v in self.variables])


class PseudoBooleanPolynomial:
    """A fully aggregated polynomial in canonical order.

    Monomials are ordered by degree, then colexicographically by variable
    tuple (highest index compared first), so ``y1*y3`` precedes ``y2*y3``
    which precedes ``y1*y4``. Equality and hashing look at the monomials
    only, so two patches that reduce to the same terms compare equal.
    """

    __slots__ = ("_monomials", "_n_vars")

    def __init__(self, monomials: Iterable[Monomial] = (), n_vars: int = 0):
        acc: dict[tuple[int, ...], int] = defaultdict(int)
        for mono in monomials:
            acc[mono.variables] += mono.coefficient
        self._n_vars = int(n_vars)
        self._monomials = _canonical(acc)
        top = max((m.variables[-1] for m in self._monomials if m.variables), default=0)
        if top > self._n_vars:
            raise ValueError(f"variable y{top} out of range for {self._n_vars} variables")

    @classmethod
    def from_terms(cls, terms: Mapping[Sequence[int], int], n_vars: int) -> PseudoBooleanPolynomial:
        """Build from ``{variables: coefficient}``; zero coefficients are skipped."""
        return cls((Monomial(c, tuple(sorted(v))) for v, c in terms.items() if c), n_vars)

    @property
    def monomials(self) -> tuple[Monomial, ...]:
        return self._monomials

    @property
    def n_vars(self) -> int:
        return self._n_vars

    @property
    def degree(self) -> int:
        return max((m.degree for m in self._monomials), default=0)

    @property
    def constant(self) -> int:
        if self._monomials and not self._monomials[0].variables:
            return self._monomials[0].coefficient
        return 0

    def terms(self) -> dict[tuple[int, ...], int]:
        return {m.variables: m.coefficient for m in self._monomials}

    def __len__(self) -> int:
        return len(self._monomials)

    def __iter__(self):
        return iter(self._monomials)

    def __eq__(self, other):
        if not isinstance(other, PseudoBooleanPolynomial):
            return NotImplemented
        return self._monomials == other._monomials

    def __hash__(self):
        return hash(self._monomials)

    def __str__(self) -> str:
        if not self._monomials:
            return "0"
        return " + ".join(str(m) for m in self._monomials)

    def __repr__(self) -> str:
        return f"PseudoBooleanPolynomial({str(self)!r}, n_vars={self._n_vars})"


def _order(variables: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (len(variables), variables[::-1])


def _canonical(acc: Mapping[tuple[int, ...], int]) -> tuple[Monomial, ...]:
    keys = sorted((k for k, v in acc.items() if v), key=_order)
    return tuple(Monomial(int(acc[k]), k) for k in keys)


def build_polynomial(delta, pi) -> PseudoBooleanPolynomial:
    """Aggregate the per-column terms of ``delta`` under the orderings ``pi``.

    Column ``j`` contributes ``delta[r, j] * y[pi[0, j]] * ... * y[pi[r-1, j]]``
    for every sorted position ``r``; identical variable sets are summed.
    """
    delta = np.asarray(delta)
    pi = np.asarray(pi)
    if delta.ndim != 2 or delta.shape != pi.shape:
        raise ValueError(f"dimension mismatch: delta {delta.shape} vs permutation {pi.shape}")
    if (delta < 0).any():
        raise ValueError("delta entries must be nonnegative")
    m, n = delta.shape
    acc: dict[tuple[int, ...], int] = defaultdict(int)
    d_cols = delta.T.tolist()
    p_cols = pi.T.tolist()
    for d_col, p_col in zip(d_cols, p_cols):
        for r in range(m):
            if d_col[r]:
                acc[tuple(sorted(p_col[:r]))] += d_col[r]
    poly = PseudoBooleanPolynomial.__new__(PseudoBooleanPolynomial)
    poly._n_vars = m
    poly._monomials = _canonical(acc)
    return poly


def matrix_polynomial(c) -> PseudoBooleanPolynomial:
    """Reduced polynomial of a cost matrix: permute, sort, difference, aggregate."""
    c = as_cost_matrix(c)
    pi = permutation_matrix(c)
    return build_polynomial(delta_matrix(sort_columns(c, pi)), pi)


def degree(poly: PseudoBooleanPolynomial) -> int:
    return poly.degree


def classify(d: int, p: int) -> Label:
    """Edge when the degree strictly exceeds the truncation threshold."""
    if p < 0:
        raise ValueError("truncation threshold must be nonnegative")
    return Label.EDGE if d > p else Label.BLOB


def evaluate(poly: PseudoBooleanPolynomial, y: Sequence) -> int:
    y = [bool(v) for v in y]
    if len(y) != poly.n_vars:
        raise ValueError(f"expected {poly.n_vars} Boolean values, got {len(y)}")
    return sum(m.coefficient for m in poly.monomials if all(y[v - 1] for v in m.variables))


def truncate(poly: PseudoBooleanPolynomial, p_max: int) -> PseudoBooleanPolynomial:
    """Drop every monomial of degree above ``p_max``."""
    if p_max < 0:
        raise ValueError("truncation degree must be nonnegative")
    out = PseudoBooleanPolynomial.__new__(PseudoBooleanPolynomial)
    out._n_vars = poly.n_vars
    out._monomials = tuple(m for m in poly.monomials if m.degree <= p_max)
    return out


def canonical_equal(a: PseudoBooleanPolynomial, b: PseudoBooleanPolynomial) -> bool:
    return a.monomials == b.monomials

"""
Exact Linear Algebra

Fraction-free row echelon forms over the integers for sparse vectors, with
optional tracking of combinations (dependency certificates), and a small
Gauss-Jordan inverse over the rationals.
"""

import heapq
import logging
from fractions import Fraction
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

SparseVector = Dict[int, int]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def common_denominator(vector: Mapping[int, object]) -> int:
    denominator = 1
    for value in vector.values():
        if isinstance(value, Fraction):
            denominator = _lcm(denominator, value.denominator)
    return denominator


def integral_vector(vector: Mapping[int, object]) -> SparseVector:
    """
    Clear the denominators of a sparse rational vector.

    Args:
        vector: Mapping column -> int or Fraction

    Returns:
        Integer vector (vector times its common denominator), zeros dropped
    """
    denominator = common_denominator(vector)
    result = {}
    for col, value in vector.items():
        scaled = value * denominator
        if scaled:
            result[col] = int(scaled)
    return result


def _content(*vectors: Mapping[int, int]) -> int:
    g = 0
    for vector in vectors:
        for value in vector.values():
            g = gcd(g, value)
            if g == 1:
                return 1
    return g


class EchelonBasis:
    """
    Incrementally built row echelon basis over the integers.

    Every stored row is primitive, its pivot is its smallest column, and the
    pivot entry is positive. When tracking, each row also carries the integer
    combination of inserted tags it came from.
    """

    def __init__(self):
        self._rows: Dict[int, Tuple[SparseVector, SparseVector]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def reduce(self, vector: Mapping[int, object],
               combination: Optional[Mapping[int, int]] = None) -> Tuple[SparseVector, SparseVector]:
        """
        Reduce a vector against the stored rows.

        Args:
            vector: Sparse rational vector
            combination: Tag combination carried along with the vector

        Returns:
            (residue, combination) with residue free of pivot columns
        """
        denominator = common_denominator(vector)
        v = integral_vector(vector)
        combo = {tag: int(value) * denominator for tag, value in (combination or {}).items() if value}
        heap = list(v)
        heapq.heapify(heap)

        while heap:
            col = heapq.heappop(heap)
            value = v.get(col)
            if not value or col not in self._rows:
                continue
            row, row_combo = self._rows[col]
            p = row[col]
            g = gcd(value, p)
            scale, factor = p // g, value // g
            if scale != 1:
                v = {c: x * scale for c, x in v.items()}
                combo = {t: x * scale for t, x in combo.items()}
            for c, x in row.items():
                updated = v.get(c, 0) - factor * x
                if updated:
                    if c not in v:
                        heapq.heappush(heap, c)
                    v[c] = updated
                else:
                    v.pop(c, None)
            for t, x in row_combo.items():
                updated = combo.get(t, 0) - factor * x
                if updated:
                    combo[t] = updated
                else:
                    combo.pop(t, None)

            g = _content(v, combo)
            if g > 1:
                v = {c: x // g for c, x in v.items()}
                combo = {t: x // g for t, x in combo.items()}

        return v, combo

    def insert(self, vector: Mapping[int, object],
               combination: Optional[Mapping[int, int]] = None) -> Optional[SparseVector]:
        """
        Insert a vector.

        Returns:
            None if the vector was independent and became a new row, otherwise
            the tag combination that reduces to zero (a dependency)
        """
        residue, combo = self.reduce(vector, combination)
        if not residue:
            return combo

        pivot = min(residue)
        if residue[pivot] < 0:
            residue = {c: -x for c, x in residue.items()}
            combo = {t: -x for t, x in combo.items()}
        self._rows[pivot] = (residue, combo)
        return None

    def add(self, vector: Mapping[int, object]) -> bool:
        """Insert without tracking; True if the rank grew."""
        return self.insert(vector) is None

    def contains(self, vector: Mapping[int, object]) -> bool:
        residue, _ = self.reduce(vector)
        return not residue

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis()
        other._rows = dict(self._rows)
        return other


def identity_matrix(n: int) -> np.ndarray:
    return np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], dtype=object)


def inverse_matrix(rows: Sequence[Sequence[object]]) -> np.ndarray:
    """
    Invert a square rational matrix by Gauss-Jordan elimination.

    Args:
        rows: Square matrix with int or Fraction entries

    Returns:
        numpy object array of Fractions

    Raises:
        ValueError: If the matrix is singular or not square
    """
    X = np.array([[Fraction(x) for x in row] for row in rows], dtype=object)
    n = X.shape[0]
    if X.ndim != 2 or X.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {X.shape}")
    Y = identity_matrix(n)

    for i in range(n):
        for j in range(i, n):
            if X[j, i] != 0:
                if i != j:
                    X[[i, j]] = X[[j, i]]
                    Y[[i, j]] = Y[[j, i]]
                break
        else:
            raise ValueError("matrix is not invertible")

        pivot = X[i, i]
        X[i, :] = X[i, :] / pivot
        Y[i, :] = Y[i, :] / pivot
        for j in range(n):
            if j != i and X[j, i] != 0:
                factor = X[j, i]
                X[j, :] = X[j, :] - factor * X[i, :]
                Y[j, :] = Y[j, :] - factor * Y[i, :]

    return Y

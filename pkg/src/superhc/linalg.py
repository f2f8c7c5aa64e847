"""Sparse exact linear algebra over the Gaussian rationals.

Vectors are dicts mapping a hashable coordinate key to a nonzero scalar.
"""

from __future__ import annotations

from typing import Hashable, Iterable

from .scalars import ONE, ZERO, GaussianRational

Vector = dict


def add_scaled(target: dict, source: dict, scalar: GaussianRational) -> None:
    """In place ``target += scalar * source``, dropping zeros."""
    if not scalar:
        return
    for key, value in source.items():
        new = target.get(key, ZERO) + scalar * value
        if new:
            target[key] = new
        else:
            target.pop(key, None)


def scaled(vec: dict, scalar: GaussianRational) -> dict:
    if not scalar:
        return {}
    return {k: v * scalar for k, v in vec.items()}


def combine(pairs: Iterable[tuple[GaussianRational, dict]]) -> dict:
    out: dict = {}
    for scalar, vec in pairs:
        add_scaled(out, vec, scalar)
    return out


class EchelonBasis:
    """Incrementally maintained reduced row echelon form of a set of vectors.

    Every accepted vector is remembered by a label, and each echelon row keeps
    the combination of labelled inputs that produced it, so membership tests
    can also return coordinates.
    """

    def __init__(self):
        self._rows: dict[Hashable, tuple[dict, dict]] = {}  # pivot -> (row, combo)
        self._labels: list = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def labels(self) -> list:
        return list(self._labels)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Return ``(remainder, combo)`` with vec = remainder + sum(combo[l] * input[l])."""
        remainder = dict(vec)
        combo: dict = {}
        for pivot in [k for k in vec if k in self._rows]:
            coeff = remainder.get(pivot)
            if not coeff:
                continue
            row, row_combo = self._rows[pivot]
            add_scaled(remainder, row, -coeff)
            add_scaled(combo, row_combo, coeff)
        # rows are fully reduced, but a subtraction can expose a pivot that was
        # not in the original support; sweep until stable.
        while True:
            hits = [k for k in remainder if k in self._rows]
            if not hits:
                return remainder, combo
            for pivot in hits:
                coeff = remainder.get(pivot)
                if not coeff:
                    continue
                row, row_combo = self._rows[pivot]
                add_scaled(remainder, row, -coeff)
                add_scaled(combo, row_combo, coeff)

    def add(self, vec: dict, label=None) -> bool:
        """Insert ``vec``; return False (and change nothing) if it is dependent."""
        remainder, combo = self.reduce(vec)
        if not remainder:
            return False
        label = len(self._labels) if label is None else label
        self._labels.append(label)
        new_combo = {k: -v for k, v in combo.items()}
        new_combo[label] = new_combo.get(label, ZERO) + ONE
        pivot = min(remainder, key=_sort_key)
        inv = remainder[pivot].inverse()
        row = scaled(remainder, inv)
        new_combo = scaled(new_combo, inv)
        for other_pivot, (other_row, other_combo) in self._rows.items():
            coeff = other_row.get(pivot)
            if coeff:
                add_scaled(other_row, row, -coeff)
                add_scaled(other_combo, new_combo, -coeff)
        self._rows[pivot] = (row, new_combo)
        return True

    def contains(self, vec: dict) -> bool:
        remainder, _ = self.reduce(vec)
        return not remainder

    def coordinates(self, vec: dict) -> dict | None:
        """Coefficients of ``vec`` on the accepted inputs, or None if outside the span."""
        remainder, combo = self.reduce(vec)
        if remainder:
            return None
        return combo


def _sort_key(key):
    return (str(type(key)), key) if not isinstance(key, tuple) else ("tuple", key)


def rank(vectors: Iterable[dict]) -> int:
    basis = EchelonBasis()
    for vec in vectors:
        basis.add(vec)
    return basis.rank


def independent_subset(vectors: Iterable[dict]) -> list[int]:
    """Indices of a maximal independent subfamily, chosen greedily in order."""
    basis = EchelonBasis()
    return [i for i, vec in enumerate(vectors) if basis.add(vec)]


def kernel(columns: list[dict]) -> list[dict]:
    """Basis of {c : sum_j c_j columns[j] = 0}, as sparse dicts over column indices."""
    basis = EchelonBasis()
    relations = []
    for j, col in enumerate(columns):
        remainder, combo = basis.reduce(col)
        if remainder:
            basis.add(col, label=j)
        else:
            relation = {k: -v for k, v in combo.items()}
            relation[j] = ONE
            relations.append(relation)
    return relations


def solve_square(matrix: list[list[GaussianRational]]) -> list[list[GaussianRational]]:
    """Inverse of a dense square matrix by Gauss-Jordan elimination."""
    n = len(matrix)
    work = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv = work[col][col].inverse()
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]

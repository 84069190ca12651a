"""Exact Gaussian elimination over any field with Python arithmetic operators.

Entries may be `fractions.Fraction` or `RatFunc`; zero testing is `== 0`
(RatFunc compares against the constant). No pivoting heuristics are needed
since arithmetic is exact.
"""
from __future__ import annotations

from itertools import permutations
from typing import Sequence, TypeVar

F = TypeVar("F")

Matrix = list[list]


class InconsistentSystem(ValueError):
    pass


def _copy(rows: Sequence[Sequence[F]]) -> Matrix:
    return [list(r) for r in rows]


def rref(rows: Sequence[Sequence[F]]) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot column indices."""
    m = _copy(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[F]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[F]], one: F) -> list[list[F]]:
    """Basis of the right kernel; `one` is the field's multiplicative identity."""
    if not rows:
        return []
    ncols = len(rows[0])
    reduced, pivots = rref(rows)
    zero = one - one
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][fc]
        basis.append(vec)
    return basis


def solve(rows: Sequence[Sequence[F]], rhs: Sequence[F]) -> list[F]:
    """Unique-solution exact solve of rows @ x = rhs.

    Raises InconsistentSystem if no solution exists and ValueError if the
    solution is not unique (column-rank deficiency).
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    reduced, pivots = rref(aug)
    if ncols in pivots:
        raise InconsistentSystem("no exact solution")
    if len(pivots) < ncols:
        raise ValueError("solution is not unique")
    zero = rhs[0] - rhs[0]
    x = [zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][ncols]
    return x


def solve_particular(rows: Sequence[Sequence[F]], rhs: Sequence[F]) -> list[F]:
    """Any exact solution of rows @ x = rhs (free variables set to zero)."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    reduced, pivots = rref(aug)
    if ncols in pivots:
        raise InconsistentSystem("no exact solution")
    zero = rhs[0] - rhs[0]
    x = [zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][ncols]
    return x


def inverse(rows: Sequence[Sequence[F]], one: F) -> Matrix:
    n = len(rows)
    zero = one - one
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced]


def det(rows: Sequence[Sequence[F]]):
    """Determinant by fraction-producing elimination (exact)."""
    m = _copy(rows)
    n = len(m)
    sign = 1
    result = None
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            return m[0][0] - m[0][0]  # zero of the field
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign = -sign
        pv = m[c][c]
        result = pv if result is None else result * pv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result if sign == 1 else -result


def det_cofactor(rows: Sequence[Sequence[F]]):
    """Leibniz-formula determinant; slow independent cross-check for tests."""
    n = len(rows)
    total = None
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = rows[0][perm[0]]
        for i in range(1, n):
            term = term * rows[i][perm[i]]
        if inv % 2:
            term = -term
        total = term if total is None else total + term
    return total


class GreedyBasis:
    """Incremental independent-prefix selection over a field.

    Feed vectors in order; `offer` returns True (and keeps the vector) iff it
    is independent of everything accepted so far.
    """

    def __init__(self):
        self.reduced: list[tuple[int, list]] = []  # (pivot column, reduced row)
        self.accepted: list[int] = []
        self.count = 0

    def offer(self, vec: Sequence[F]) -> bool:
        row = list(vec)
        for pc, red in self.reduced:
            if row[pc] != 0:
                f = row[pc]
                row = [a - f * b for a, b in zip(row, red)]
        pivot = next((c for c, v in enumerate(row) if v != 0), None)
        idx = self.count
        self.count += 1
        if pivot is None:
            return False
        pv = row[pivot]
        row = [x / pv for x in row]
        self.reduced.append((pivot, row))
        self.reduced.sort(key=lambda pr: pr[0])
        self.accepted.append(idx)
        return True

    @property
    def rank(self) -> int:
        return len(self.reduced)

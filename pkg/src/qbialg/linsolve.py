"""Sparse exact Gauss-Jordan elimination over Q(i, sqrt2).

Rows are dicts ``column -> AlgebraicScalar``; columns are any hashable keys.
Pivots are picked by a caller-supplied ranking so results are deterministic.
"""
from __future__ import annotations

from .scalars import ZERO, as_scalar

_RHS = ("__rhs__",)


class Inconsistent(ArithmeticError):
    """Raised when a linear system has no solution.

    ``row`` is the offending combination of equations reduced to ``0 = rhs``.
    """

    def __init__(self, message, rhs=None, equation=None):
        super().__init__(message)
        self.rhs = rhs
        self.equation = equation


def _axpy(target, row, factor):
    # target += factor * row, dropping cancelled entries
    for col, val in row.items():
        cur = target.get(col)
        new = val * factor if cur is None else cur + val * factor
        if new.is_zero():
            target.pop(col, None)
        else:
            target[col] = new


class Reducer:
    """Incremental reduced row echelon form.

    ``rank_key(col)`` orders columns; the smallest column present in a row
    becomes its pivot.
    """

    def __init__(self, rank_key=None):
        self.rank_key = rank_key
        self.pivots = {}  # pivot column -> row (pivot entry 1, fully reduced)

    def reduce(self, row):
        row = {c: as_scalar(v) for c, v in row.items() if not as_scalar(v).is_zero()}
        for col in [c for c in row if c in self.pivots]:
            val = row.get(col)
            if val is not None:
                _axpy(row, self.pivots[col], -val)
        return row

    def add(self, row):
        """Insert a row; return its pivot column, or None if dependent."""
        row = self.reduce(row)
        cols = [c for c in row if c != _RHS]
        if not cols:
            if row.get(_RHS) is not None:
                raise Inconsistent("inconsistent linear system", rhs=row[_RHS])
            return None
        pivot = min(cols, key=self.rank_key) if self.rank_key else min(cols, key=_default_key)
        inv = row[pivot].inverse()
        row = {c: v * inv for c, v in row.items()}
        for other in self.pivots.values():
            val = other.get(pivot)
            if val is not None:
                _axpy(other, row, -val)
        self.pivots[pivot] = row
        return pivot

    @property
    def rank(self):
        return len(self.pivots)


def _default_key(col):
    return repr(col)


def row_reduce(vectors, rank_key=None):
    """Reduce ``vectors`` to an independent RREF basis.

    Returns ``(basis, pivots)`` with ``basis[j]`` having pivot ``pivots[j]``.
    """
    red = Reducer(rank_key)
    for v in vectors:
        red.add(v)
    pivots = sorted(red.pivots, key=rank_key or _default_key)
    return [dict(red.pivots[p]) for p in pivots], pivots


def solve(equations, rhs, columns, rank_key=None):
    """Solve ``sum_c eq[c] x_c = rhs`` for every equation.

    ``columns`` lists all unknowns (so that untouched unknowns count as free).
    Free unknowns are set to zero.  Returns ``(solution, free_columns)``.
    Raises :class:`Inconsistent` when no solution exists.
    """
    red = Reducer(rank_key)
    for eq, b in zip(equations, rhs):
        row = dict(eq)
        b = as_scalar(b)
        if not b.is_zero():
            row[_RHS] = b
        try:
            red.add(row)
        except Inconsistent as exc:
            raise Inconsistent(
                "inconsistent linear system", rhs=exc.rhs, equation=eq
            ) from None
    solution = {}
    for pivot, row in red.pivots.items():
        val = row.get(_RHS, ZERO)
        if not val.is_zero():
            solution[pivot] = val
    free = [c for c in columns if c not in red.pivots]
    return solution, free

"""Sparse exact linear algebra on ``{column: coefficient}`` rows."""

from __future__ import annotations


def _axpy(row: dict, c, other: dict):
    """``row -= c * other`` in place."""
    get = row.get
    for k, v in other.items():
        s = get(k, 0) - c * v
        if s:
            row[k] = s
        else:
            row.pop(k, None)


class Echelon:
    """Incrementally built row echelon form.

    Each stored row is reduced against the pivots stored before it, so one
    pass over the pivots in insertion order reduces a new vector fully.
    """

    def __init__(self):
        self.rows: list = []  # (pivot column, row with pivot coefficient 1)

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        row = dict(vec)
        for col, prow in self.rows:
            c = row.get(col)
            if c:
                _axpy(row, c, prow)
        return row

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; ``True`` when it was independent of the span."""
        row = self.reduce(vec)
        if not row:
            return False
        col = min(row)
        inv = 1 / row[col]
        self.rows.append((col, {k: v * inv for k, v in row.items()}))
        return True

    def __contains__(self, vec: dict) -> bool:
        return not self.reduce(vec)


def nullspace(rows: list, ncols: int) -> list:
    """Basis of ``{v : A v = 0}`` for a sparse matrix with columns ``0..ncols-1``."""
    pivots = {}  # pivot column -> reduced row
    for row in rows:
        row = dict(row)
        for col, prow in pivots.items():
            c = row.get(col)
            if c:
                _axpy(row, c, prow)
        if not row:
            continue
        col = min(row)
        inv = 1 / row[col]
        row = {k: v * inv for k, v in row.items()}
        for other in pivots.values():
            c = other.get(col)
            if c:
                _axpy(other, c, row)
        pivots[col] = row
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: 1}
        for col, prow in pivots.items():
            c = prow.get(free)
            if c:
                vec[col] = -c
        basis.append(vec)
    return basis

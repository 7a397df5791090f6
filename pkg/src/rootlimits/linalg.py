"""Dense exact linear algebra over the rationals.

Matrices are lists of lists of Fractions.  Everything here is small and
deterministic; no pivoting heuristics beyond "first nonzero".
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

Matrix = List[List[Fraction]]


def mat(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """Solve a*x = b exactly; return None if the system is inconsistent.

    For underdetermined systems the free variables are set to zero, so the
    result is deterministic.
    """
    m = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(a, b, strict=True)]
    rows = len(m)
    cols = len(m[0]) - 1 if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return x


def det(a: Sequence[Sequence]) -> Fraction:
    m = [list(map(Fraction, row)) for row in a]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


class RowSpace:
    """Incrementally row-reduced span of vectors, for rank and membership tests."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: List[List[Fraction]] = []
        self.pivots: List[int] = []

    def _reduce(self, v: List[Fraction]) -> List[Fraction]:
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, v: Sequence) -> bool:
        """Insert a vector; return True if it enlarged the span."""
        v = self._reduce([Fraction(x) for x in v])
        p = next((i for i, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [x * inv for x in v]
        for i, row in enumerate(self.rows):
            if row[p] != 0:
                f = row[p]
                self.rows[i] = [x - f * y for x, y in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(p)
        return True

    def contains(self, v: Sequence) -> bool:
        v = self._reduce([Fraction(x) for x in v])
        return all(x == 0 for x in v)

    @property
    def rank(self) -> int:
        return len(self.rows)


class LinearSolver:
    """Reusable exact solver for A·x = b with a fixed coefficient matrix.

    Columns are row-reduced once; subsequent right-hand sides are solved by
    replaying the recorded elimination.  Used for the per-degree dense solves
    where hundreds of right-hand sides share one matrix.
    """

    def __init__(self, columns: Sequence[Sequence], nrows: int):
        self.nrows = nrows
        self.ncols = len(columns)
        # work on the transpose: each column is a vector of length nrows
        m = [[Fraction(columns[j][i]) for j in range(self.ncols)] for i in range(nrows)]
        self.ops: List[tuple] = []
        self.pivots: List[tuple] = []
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
            if piv is None:
                continue
            if piv != r:
                m[r], m[piv] = m[piv], m[r]
                self.ops.append(("swap", r, piv))
            inv = 1 / m[r][c]
            if inv != 1:
                m[r] = [x * inv for x in m[r]]
                self.ops.append(("scale", r, inv))
            for i in range(nrows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
                    self.ops.append(("axpy", i, r, f))
            self.pivots.append((r, c))
            r += 1
            if r == nrows:
                break
        self.rank = r

    def solve(self, b: Sequence) -> Optional[List[Fraction]]:
        """Return x with A·x = b (free coordinates zero) or None if inconsistent."""
        v = [Fraction(x) for x in b]
        if len(v) != self.nrows:
            raise ValueError("right-hand side has wrong length")
        for op in self.ops:
            if op[0] == "swap":
                _, i, j = op
                v[i], v[j] = v[j], v[i]
            elif op[0] == "scale":
                _, i, f = op
                v[i] *= f
            else:
                _, i, r, f = op
                if v[r] != 0:
                    v[i] -= f * v[r]
        x = [Fraction(0)] * self.ncols
        used = {r for r, _ in self.pivots}
        for i in range(self.nrows):
            if i not in used and v[i] != 0:
                return None
        for r, c in self.pivots:
            x[c] = v[r]
        return x

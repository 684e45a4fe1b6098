"""Small exact linear algebra over the rationals (ints and Fractions).

Only what the kernel needs: row reduction, rank, determinant and a
linear solve. Matrices are lists of rows.
"""

from fractions import Fraction


def _copy(rows):
    return [[Fraction(v) for v in row] for row in rows]


def row_reduce(rows):
    """Reduced row echelon form; returns (rref, pivot_columns)."""
    m = _copy(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(row_reduce(rows)[1])


def det(rows):
    """Determinant by fraction-exact Gaussian elimination."""
    m = _copy(rows)
    n = len(m)
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        result *= m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] / m[col][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return result


def solve(a, b):
    """Solve the square system ``a x = b`` exactly; None if ``a`` is singular."""
    n = len(a)
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def in_span(basis_rows, row) -> bool:
    """True when ``row`` is a rational combination of ``basis_rows``."""
    if not basis_rows:
        return all(v == 0 for v in row)
    return rank(list(basis_rows) + [row]) == rank(basis_rows)


class Span:
    """Row space of a fixed set of rational vectors, for repeated membership tests."""

    def __init__(self, rows):
        rows = list(rows)
        red, pivots = row_reduce(rows) if rows else ([], [])
        self.dim = len(pivots)
        self._rows = red[: self.dim]
        self._pivots = pivots

    def __contains__(self, row) -> bool:
        v = [Fraction(x) for x in row]
        for r, col in zip(self._rows, self._pivots):
            f = v[col]
            if f:
                v = [a - f * b for a, b in zip(v, r)]
        return not any(v)

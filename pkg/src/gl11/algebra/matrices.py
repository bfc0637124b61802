"""Exact integer matrices: Smith normal form and positive-eigenvalue counts.

sigma_plus counts strictly positive eigenvalues of a symmetric matrix by
Sturm root counting on the exact characteristic polynomial (with Yun
square-free splitting for multiplicities), so singular linking matrices
need no tolerance.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import NotSymmetric
from . import polys


class IntMatrix:
    """Immutable rectangular matrix with arbitrary-precision integer entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        data = []
        for r in entries:
            if len(r) != cols:
                raise ValueError("ragged rows")
            data.append(tuple(int(x) for x in r))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(data))

    def __setattr__(self, *args):
        raise AttributeError("IntMatrix values are immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, rc):
        return self.entries[rc[0]][rc[1]]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix)
                and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return IntMatrix([[sum(self.entries[i][k] * other.entries[k][j]
                               for k in range(self.cols))
                           for j in range(other.cols)]
                          for i in range(self.rows)])

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.entries[i][j] for i in range(self.rows)]
                          for j in range(self.cols)])

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i))

    def det(self) -> int:
        """Exact determinant via fraction-free Bareiss."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pivot = next((r for r in range(k + 1, n) if m[r][k]), None)
                if pivot is None:
                    return 0
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def to_lists(self):
        return [list(r) for r in self.entries]

    def __repr__(self):
        return f"IntMatrix({self.to_lists()!r})"


def snf(a: IntMatrix):
    """Smith normal form: returns (U, D, V) with U*A*V = D.

    U and V are unimodular; D is diagonal with d1 | d2 | ... >= 0.
    """
    rows, cols = a.rows, a.cols
    m = [list(r) for r in a.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        for k in range(cols):
            m[i][k] -= q * m[j][k]
        for k in range(rows):
            u[i][k] -= q * u[j][k]

    def col_op(i, j, q):  # col_i -= q * col_j
        for k in range(rows):
            m[k][i] -= q * m[k][j]
        for k in range(cols):
            v[k][i] -= q * v[k][j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for k in range(rows):
            m[k][i], m[k][j] = m[k][j], m[k][i]
        for k in range(cols):
            v[k][i], v[k][j] = v[k][j], v[k][i]

    t = 0
    while t < min(rows, cols):
        # locate a pivot of least absolute value in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (best is None
                                     or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, rows):
            if m[i][t]:
                q = m[i][t] // m[t][t]
                row_op(i, t, q)
                if m[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if m[t][j]:
                q = m[t][j] // m[t][t]
                col_op(j, t, q)
                if m[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        culprit = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t]:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            row_op(t, culprit, -1)
            continue
        t += 1

    for i in range(min(rows, cols)):
        if m[i][i] < 0:
            for k in range(cols):
                m[i][k] = -m[i][k]
            for k in range(rows):
                u[i][k] = -u[i][k]
    return IntMatrix(u), IntMatrix(m), IntMatrix(v)


def char_poly(a: IntMatrix):
    """Coefficients of det(x*I - A), constant term first, exact."""
    if a.rows != a.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = a.rows
    # Faddeev-LeVerrier: c[n] = 1, with exact rational recurrences
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M <- A*M + c_{n-k+1} * I
        if k > 1:
            prod = [[sum(Fraction(a.entries[i][l]) * m[l][j] for l in range(n))
                     for j in range(n)] for i in range(n)]
            for i in range(n):
                prod[i][i] += coeffs[n - k + 1]
            m = prod
        else:
            m = [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
                 for i in range(n)]
        am = [[sum(Fraction(a.entries[i][l]) * m[l][j] for l in range(n))
               for j in range(n)] for i in range(n)]
        trace = sum(am[i][i] for i in range(n))
        coeffs[n - k] = -trace / k
    return polys.trim(list(coeffs))


def sigma_plus(a: IntMatrix) -> int:
    """Number of strictly positive eigenvalues of a symmetric matrix, exact."""
    if not a.is_symmetric():
        raise NotSymmetric("sigma_plus requires a symmetric matrix")
    if a.rows == 0:
        return 0
    return polys.count_positive_roots(char_poly(a))

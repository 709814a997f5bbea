"""Dense exact matrices as lists of rows.

Small helpers only; every entry is a field scalar and every routine is exact
Gaussian elimination.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .errors import RankMismatch, SingularMatrix
from .field_core import Field, Scalar

Matrix = list[list[Scalar]]


def identity(field: Field, n: int) -> Matrix:
    zero, one = field.zero, field.one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(field: Field, rows: int, cols: int) -> Matrix:
    zero = field.zero
    return [[zero] * cols for _ in range(rows)]


def coerce(field: Field, rows: Sequence[Sequence]) -> Matrix:
    return [[field(x) for x in row] for row in rows]


def is_square(a: Sequence[Sequence]) -> bool:
    return all(len(row) == len(a) for row in a)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise RankMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = list(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out_row = []
        for col in bt:
            acc = 0
            for k, x in nz:
                y = col[k]
                if y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    # the accumulator starts as int 0; push it back into the field
    zero = _zero_like(a, b)
    return [[zero + x for x in row] for row in out]


def _zero_like(a: Matrix, b: Matrix) -> Scalar:
    for m in (a, b):
        for row in m:
            for x in row:
                return x * 0
    return 0


def matvec(a: Matrix, v: Sequence[Scalar]) -> list[Scalar]:
    return [sum((x * y for x, y in zip(row, v)), v[0] * 0) for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def scale(c: Scalar, a: Matrix) -> Matrix:
    return [[c * x for x in row] for row in a]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def equal(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def is_identity(a: Matrix) -> bool:
    return all(x == (1 if i == j else 0) for i, row in enumerate(a) for j, x in enumerate(row))


def row_echelon(a: Matrix) -> tuple[Matrix, list[int], int]:
    """Return (echelon form, pivot columns, number of row swaps)."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    swaps = 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            swaps += 1
        inv = 1 / m[r][c]
        for i in range(r + 1, rows):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots, swaps


def rank(a: Matrix) -> int:
    if not a:
        return 0
    return len(row_echelon(a)[1])


def det(a: Matrix) -> Scalar:
    n = len(a)
    if not is_square(a):
        raise RankMismatch("determinant of a non-square matrix")
    m, pivots, swaps = row_echelon(a)
    if len(pivots) < n:
        return a[0][0] * 0
    d = m[0][0] * 0 + 1
    for i in range(n):
        d = d * m[i][i]
    return -d if swaps % 2 else d


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    if not is_square(a):
        raise RankMismatch("inverse of a non-square matrix")
    zero = a[0][0] * 0
    one = zero + 1
    m = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def solve(a: Matrix, b: Sequence[Scalar]) -> Optional[list[Scalar]]:
    """One solution x of a x = b, or None when the system is inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, pivots, _ = row_echelon(aug)
    if cols in pivots:
        return None
    zero = b[0] * 0
    x = [zero] * cols
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        acc = m[r][cols]
        for k in range(c + 1, cols):
            if m[r][k]:
                acc = acc - m[r][k] * x[k]
        x[c] = acc / m[r][c]
    return x


def nullspace(a: Matrix) -> list[list[Scalar]]:
    """Basis of {x : a x = 0}."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m, pivots, _ = row_echelon(a)
    zero = a[0][0] * 0
    one = zero + 1
    # back-substitute to reduced form
    m = [list(row) for row in m[: len(pivots)]]
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(r):
            if m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [zero] * cols
        v[fcol] = one
        for r, c in enumerate(pivots):
            v[c] = -m[r][fcol]
        basis.append(v)
    return basis

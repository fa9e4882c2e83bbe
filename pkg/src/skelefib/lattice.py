"""Exact integer and rational linear algebra.

Everything here runs on Python's arbitrary-precision ``int`` and
``fractions.Fraction``; no floating point is used anywhere.  Matrices are
plain tuples of tuples in row-major order, vectors are tuples.  All
functions are pure and return fresh tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import (
    EmptyInputError,
    NotCoprimeError,
    NotSquareError,
    NotUnimodularError,
)

IntVec = tuple[int, ...]
IntMat = tuple[IntVec, ...]
RatVec = tuple[Fraction, ...]
RatMat = tuple[RatVec, ...]


def _freeze(m: Sequence[Sequence[int]]) -> IntMat:
    rows = tuple(tuple(int(x) for x in row) for row in m)
    if not rows or not rows[0]:
        raise EmptyInputError("matrix must have at least one row and column")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix")
    return rows


def gcd_all(xs: Sequence[int]) -> int:
    """Nonnegative gcd of a nonempty sequence; gcd of all zeros is 0."""
    xs = tuple(xs)
    if not xs:
        raise EmptyInputError("gcd_all needs at least one integer")
    return math.gcd(*xs)


def is_primitive(v: Sequence[int]) -> bool:
    """True when the entries of a nonzero vector have gcd 1."""
    return gcd_all(v) == 1


def identity_matrix(k: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*[tuple(row) for row in m]))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v: Sequence) -> tuple:
    return tuple(c * x for x in v)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix via fraction-free elimination.

    Raises NotSquareError on non-square input.  Intermediate divisions in
    the Bareiss recurrence are exact, so the result is an exact integer of
    any size.
    """
    m = _freeze(m)
    n = len(m)
    if any(len(r) != n for r in m):
        raise NotSquareError(f"determinant needs a square matrix, got {len(m)}x{len(m[0])}")
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Column-style Hermite normal form.

    Returns (H, U) with H = M @ U, U unimodular, and H in column echelon
    form: pivots walk down and right, each pivot is positive, entries to
    the left of a pivot in its row are reduced into [0, pivot), and zero
    columns come last.

    The pivot rule is fixed so the output is reproducible: rows are
    processed top to bottom, and within the active row the entry of
    smallest absolute value (leftmost on ties) is moved into the pivot
    column before each Euclidean sweep.
    """
    m = _freeze(m)
    nrows, ncols = len(m), len(m[0])
    h = [list(row) for row in m]
    u = [list(row) for row in identity_matrix(ncols)]

    def swap_cols(j, k):
        for mat in (h, u):
            for row in mat:
                row[j], row[k] = row[k], row[j]

    def negate_col(j):
        for mat in (h, u):
            for row in mat:
                row[j] = -row[j]

    def add_multiple(dst, src, q):
        # column dst -= q * column src
        for mat in (h, u):
            for row in mat:
                row[dst] -= q * row[src]

    col = 0
    for r in range(nrows):
        if col >= ncols:
            break
        support = [j for j in range(col, ncols) if h[r][j] != 0]
        if not support:
            continue
        while True:
            j_star = min(
                (j for j in range(col, ncols) if h[r][j] != 0),
                key=lambda j: (abs(h[r][j]), j),
            )
            if j_star != col:
                swap_cols(col, j_star)
            if h[r][col] < 0:
                negate_col(col)
            pivot = h[r][col]
            clean = True
            for j in range(col + 1, ncols):
                if h[r][j] != 0:
                    add_multiple(j, col, h[r][j] // pivot)
                    if h[r][j] != 0:
                        clean = False
            if clean:
                break
        pivot = h[r][col]
        for j in range(col):
            q = h[r][j] // pivot
            if q:
                add_multiple(j, col, q)
        col += 1

    return tuple(tuple(row) for row in h), tuple(tuple(row) for row in u)


def complete_last_row_to_unimodular(d: Sequence[int]) -> IntMat:
    """Square unimodular matrix whose last row is the primitive vector d.

    The construction is deterministic: write d * U = (1, 0, ..., 0) using
    the Hermite normal form of d as a single-row matrix, so d is the first
    row of U^-1, then cycle that row to the bottom.

    Raises NotCoprimeError when gcd(d) != 1, which signals that input
    multiplicities were not divided by their common factor.
    """
    d = tuple(int(x) for x in d)
    if not d:
        raise EmptyInputError("empty vector")
    if gcd_all(d) != 1:
        raise NotCoprimeError(f"gcd of {d} is {gcd_all(d)}, expected 1")
    _, u = hermite_normal_form((d,))
    uinv = int_inverse_unimodular(u)
    return uinv[1:] + (uinv[0],)


def dual_basis(m: Sequence[Sequence[int]]) -> IntMat:
    """The matrix D with D^T @ M = identity, for unimodular M.

    The columns of M are a lattice basis; the columns of D are the dual
    functionals.  Raises NotUnimodularError when |det M| != 1, which
    signals that the given generators were not a lattice basis.
    """
    m = _freeze(m)
    if abs(determinant(m)) != 1:
        raise NotUnimodularError("dual basis needs |det| = 1")
    return transpose(int_inverse_unimodular(m))


def express_in_basis(b: Sequence[Sequence[int]], w: Sequence[int]) -> IntVec:
    """Unique integer coefficients c with B @ c = w, for unimodular B."""
    b = _freeze(b)
    if len(b) != len(b[0]) or abs(determinant(b)) != 1:
        raise NotUnimodularError("express_in_basis needs a unimodular square matrix")
    return mat_vec(int_inverse_unimodular(b), tuple(int(x) for x in w))


def int_inverse_unimodular(m: Sequence[Sequence[int]]) -> IntMat:
    """Exact integer inverse of a matrix with determinant +-1."""
    inv = rat_inverse(m)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise NotUnimodularError("matrix has no integer inverse")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def rat_inverse(m: Sequence[Sequence]) -> RatMat:
    """Exact inverse over Q via Gauss-Jordan elimination."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise NotSquareError("inverse needs a square matrix")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                factor = a[i][col]
                a[i] = [x - factor * y for x, y in zip(a[i], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def rank(m: Sequence[Sequence]) -> int:
    """Rank over Q, computed by exact elimination."""
    rows = [[Fraction(x) for x in row] for row in m]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def solve_exact(a: Sequence[Sequence], rhs: Sequence) -> RatVec | None:
    """Solve A x = rhs over Q when the solution is unique.

    Returns None when the system is inconsistent and raises ValueError when
    the solution space is positive-dimensional (callers here always work
    with affinely independent data, so that indicates a bug upstream).
    """
    if len(a) != len(rhs) or not a:
        raise ValueError("shape mismatch between matrix and right-hand side")
    rows = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(a, rhs)]
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            return None
    if len(pivots) < ncols:
        raise ValueError("solution is not unique")
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = rows[i][ncols]
    return tuple(x)


def solve_affine_combination(points: Sequence[Sequence], target: Sequence) -> RatVec | None:
    """Coefficients c with sum(c) = 1 and sum(c_i * points_i) = target.

    Points must be affinely independent; returns None when the target is
    outside their affine hull.
    """
    if not points:
        return None
    dim = len(points[0])
    a = [[Fraction(p[i]) for p in points] for i in range(dim)]
    a.append([Fraction(1)] * len(points))
    rhs = [Fraction(x) for x in target] + [Fraction(1)]
    return solve_exact(a, rhs)

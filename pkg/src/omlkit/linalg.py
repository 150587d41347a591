"""Exact linear algebra over the Gaussian rationals.

Matrices are tuples of tuples of GQ; the functions here never mutate their
arguments and never leave exact arithmetic.
"""

from __future__ import annotations

from .gq import GQ, ZERO, ONE

Matrix = tuple
Vector = tuple


def zeros(m: int, n: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(n)) for _ in range(m))


def eye(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n))
                 for i in range(n))


def mat(rows) -> Matrix:
    """Build a matrix from nested iterables of GQ/int/Fraction."""
    return tuple(tuple(x if isinstance(x, GQ) else GQ(x) for x in row)
                 for row in rows)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def conj_mat(a: Matrix) -> Matrix:
    return tuple(tuple(x.conj() for x in row) for row in a)


def adjoint(a: Matrix) -> Matrix:
    return transpose(conj_mat(a))


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c, a: Matrix) -> Matrix:
    c = c if isinstance(c, GQ) else GQ(c)
    return tuple(tuple(c * x for x in row) for row in a)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(ra, cb)), ZERO)
                       for cb in bt) for ra in a)


def matvec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in a)


def trace(a: Matrix) -> GQ:
    return sum((a[i][i] for i in range(len(a))), ZERO)


def kron(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    for ra in a:
        for rb in b:
            rows.append(tuple(x * y for x in ra for y in rb))
    return tuple(rows)


def inner(u: Vector, v: Vector) -> GQ:
    """Hermitian inner product, conjugate-linear in the first argument."""
    return sum((x.conj() * y for x, y in zip(u, v)), ZERO)


def flatten(a: Matrix) -> Vector:
    return tuple(x for row in a for x in row)


def unflatten(v: Vector, m: int, n: int) -> Matrix:
    return tuple(tuple(v[i * n + j] for j in range(n)) for i in range(m))


def rref(rows) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with leading entries 1 and cleared pivot
    columns; zero rows are dropped.  Returns (rows, pivot_columns)."""
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(work)):
            if work[i][c]:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = ONE / work[r][c]
        work[r] = [inv * x for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    out = tuple(tuple(row) for row in work[:r])
    return out, tuple(pivots)


def rank(rows) -> int:
    return len(rref(rows)[0])


def nullspace(rows, ncols: int) -> Matrix:
    """Canonical basis (rref rows) of {x : A x = 0}."""
    red, pivots = rref(rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(tuple(v))
    return rref(basis)[0]


def in_rowspace(red: Matrix, v: Vector) -> bool:
    """Membership test against rows already in rref."""
    w = list(v)
    for row in red:
        c = next(i for i, x in enumerate(row) if x)
        if w[c]:
            f = w[c]
            w = [x - f * y for x, y in zip(w, row)]
    return not any(w)


def reduce_against(red: Matrix, v: Vector) -> Vector:
    """Remainder of v after elimination by rref rows (zero iff member)."""
    w = list(v)
    for row in red:
        c = next(i for i, x in enumerate(row) if x)
        if w[c]:
            f = w[c]
            w = [x - f * y for x, y in zip(w, row)]
    return tuple(w)


def solve(a: Matrix, b: Vector):
    """One exact solution of A x = b, or None if inconsistent."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    red, pivots = rref(aug)
    x = [ZERO] * ncols
    for r, c in enumerate(pivots):
        if c == ncols:
            return None
        x[c] = red[r][ncols]
    return tuple(x)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + list(erow) for row, erow in zip(a, eye(n))]
    red, pivots = rref(aug)
    if pivots[:n] != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def is_zero_mat(a: Matrix) -> bool:
    return not any(any(row) for row in a)

"""Exact linear algebra over QQ on lists of rows (or numpy object arrays)."""

from __future__ import annotations

from collections.abc import Sequence

from gmpy2 import mpq

__all__ = ["to_qq_matrix", "rref", "rank", "nullspace", "solve", "in_span", "matmul", "identity"]


def to_qq_matrix(m) -> list[list[mpq]]:
    return [[mpq(v) for v in row] for row in m]


def rref(m, ncols: int | None = None) -> tuple[list[list[mpq]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = to_qq_matrix(m)
    if not a:
        return [], []
    ncols = len(a[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        row = a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], row)]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(m) -> int:
    m = list(m)
    if not m or not len(m[0]):
        return 0
    return len(rref(m)[1])


def nullspace(m, ncols: int | None = None) -> list[list[mpq]]:
    """Basis of {v : m v = 0}."""
    m = list(m)
    if not m:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[mpq(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    n = len(m[0])
    red, piv = rref(m)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [mpq(0)] * n
        v[f] = mpq(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(m, b) -> list[mpq] | None:
    """One solution of m x = b, or None."""
    aug = [list(row) + [bv] for row, bv in zip(m, b)]
    n = len(m[0])
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [mpq(0)] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    cols = [list(c) for c in zip(*vectors)]
    return solve(cols, list(v)) is not None


def matmul(a, b) -> list[list[mpq]]:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), mpq(0)) for col in bt] for row in a]


def identity(n: int) -> list[list[mpq]]:
    return [[mpq(int(i == j)) for j in range(n)] for i in range(n)]

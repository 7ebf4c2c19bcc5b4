"""Exact feasibility LPs over QQ.

Two independent engines:

* :func:`fm_solve` -- Fourier-Motzkin elimination for ``A y >= b`` with free
  ``y``; cheap in the low dimensions (torus rank <= 4) used here and returns
  an explicit witness by back substitution.
* :func:`simplex_feasible` -- phase-one simplex with Bland's rule for
  ``A x = b, x >= 0``.

:func:`solve_inequalities` dispatches between them.
"""

from __future__ import annotations

from collections.abc import Sequence

from gmpy2 import mpq

__all__ = [
    "FM_MAX_RANK",
    "fm_solve",
    "simplex_feasible",
    "simplex_solve_inequalities",
    "solve_inequalities",
    "strictly_positive_relation",
]

FM_MAX_RANK = 4


def _q(rows):
    return [[mpq(v) for v in r] for r in rows]


def _dedupe(rows):
    """Scale each row (a, b) so that the first nonzero of ``a`` is +-1; drop duplicates."""
    seen = {}
    for a, b in rows:
        piv = next((abs(v) for v in a if v), None)
        if piv is None:
            seen[(tuple(a), b)] = (a, b)
            continue
        a2 = tuple(v / piv for v in a)
        b2 = b / piv
        k = a2
        if k in seen:
            # keep the tighter lower bound
            if b2 > seen[k][1]:
                seen[k] = (list(a2), b2)
        else:
            seen[k] = (list(a2), b2)
    return list(seen.values())


def fm_solve(a: Sequence[Sequence], b: Sequence) -> list[mpq] | None:
    """A point y with ``A y >= b`` or None (Fourier-Motzkin)."""
    rows = [(list(r), mpq(v)) for r, v in zip(_q(a), b)]
    n = len(rows[0][0]) if rows else 0
    systems = []
    cur = rows
    for k in range(n - 1, -1, -1):
        cur = _dedupe(cur)
        systems.append(cur)
        pos, neg, zero = [], [], []
        for r, v in cur:
            (pos if r[k] > 0 else neg if r[k] < 0 else zero).append((r, v))
        nxt = list(zero)
        for rp, vp in pos:
            for rn, vn in neg:
                cp, cn = rp[k], -rn[k]
                nxt.append(([cn * x + cp * y for x, y in zip(rp, rn)], cn * vp + cp * vn))
        cur = nxt
    for r, v in cur:
        if v > 0:  # 0 >= v violated
            return None
    # back substitution: systems[i] eliminated variable n-1-i
    y = [mpq(0)] * n
    for i in range(n - 1, -1, -1):
        k = n - 1 - i
        lo, hi = None, None
        for r, v in systems[i]:
            c = r[k]
            if not c:
                continue
            rest = v - sum((r[j] * y[j] for j in range(k)), mpq(0))
            bound = rest / c
            if c > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is None and hi is None:
            y[k] = mpq(0)
        elif lo is None:
            y[k] = min(hi, mpq(0))
        elif hi is None:
            y[k] = max(lo, mpq(0))
        else:
            y[k] = mpq(0) if lo <= 0 <= hi else (lo + hi) / 2
    return y


def simplex_feasible(a_eq: Sequence[Sequence], b_eq: Sequence) -> list[mpq] | None:
    """A point x >= 0 with ``A x = b`` or None (phase-one simplex, Bland's rule)."""
    A = _q(a_eq)
    b = [mpq(v) for v in b_eq]
    m = len(A)
    if m == 0:
        return []
    n = len(A[0])
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # tableau with artificials n..n+m-1
    T = [A[i] + [mpq(int(i == j)) for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    ncol = n + m
    # objective: minimise sum of artificials -> reduced costs
    z = [-sum((T[i][j] for i in range(m)), mpq(0)) for j in range(ncol + 1)]
    for j in range(n, ncol):
        z[j] = mpq(0)
    while True:
        enter = next((j for j in range(ncol) if z[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded; cannot happen in phase one
            break
        piv = T[leave][enter]
        T[leave] = [v / piv for v in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter]:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        if z[enter]:
            f = z[enter]
            z = [x - f * y for x, y in zip(z, T[leave])]
        basis[leave] = enter
    if z[-1] != 0:
        return None
    x = [mpq(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = T[i][-1]
        elif T[i][-1] != 0:
            return None
    return x


def simplex_solve_inequalities(a: Sequence[Sequence], b: Sequence) -> list[mpq] | None:
    """``A y >= b`` with free y via y = p - q and surplus s: A p - A q - s = b."""
    A = _q(a)
    if not A:
        return []
    n = len(A[0])
    m = len(A)
    rows = []
    for i, r in enumerate(A):
        rows.append(r + [-v for v in r] + [mpq(-int(i == j)) for j in range(m)])
    x = simplex_feasible(rows, b)
    if x is None:
        return None
    return [x[k] - x[n + k] for k in range(n)]


def solve_inequalities(a: Sequence[Sequence], b: Sequence, method: str = "auto") -> list[mpq] | None:
    """A witness for ``A y >= b`` or None.

    ``method`` is ``"fm"``, ``"simplex"`` or ``"auto"`` (FM when the number
    of unknowns is at most :data:`FM_MAX_RANK`).
    """
    a = list(a)
    if not a:
        return []
    n = len(a[0])
    if method == "auto":
        method = "fm" if n <= FM_MAX_RANK else "simplex"
    if method == "fm":
        return fm_solve(a, b)
    if method == "simplex":
        return simplex_solve_inequalities(a, b)
    raise ValueError(f"unknown LP method {method!r}")


def strictly_positive_relation(vectors: Sequence[Sequence]) -> list[mpq] | None:
    """Coefficients c_i >= 1 with sum c_i v_i = 0, or None.

    Substituting c = 1 + y turns this into ``sum y_i v_i = -sum v_i`` with
    y >= 0.  The empty family has the empty relation.
    """
    vectors = [[mpq(v) for v in vec] for vec in vectors]
    if not vectors:
        return []
    r = len(vectors[0])
    if r == 0:
        return [mpq(1)] * len(vectors)
    rows = [[vec[k] for vec in vectors] for k in range(r)]
    rhs = [-sum((vec[k] for vec in vectors), mpq(0)) for k in range(r)]
    y = simplex_feasible(rows, rhs)
    if y is None:
        return None
    return [1 + v for v in y]

"""Krull dimension from the leading-term ideal.

dim QQ[x]/I equals the largest set of variables containing the support of no
leading monomial of a Groebner basis of I.  Supports are packed into int64
bitmasks and searched by branch and bound in :func:`max_independent_set`.
"""

from __future__ import annotations

import numpy as np

from .._accel import jit
from .groebner import GroebnerBudget, groebner
from .polynomial import Polynomial

__all__ = [
    "EMPTY_DIMENSION",
    "krull_dimension",
    "dimension_from_leading_monomials",
    "max_independent_set",
    "support_masks",
]

EMPTY_DIMENSION = -1
MAX_VARIABLES = 62


@jit
def max_independent_set(masks, nvars):
    """Size of the largest variable set containing no mask as a subset.

    Depth-first over variables ``0..nvars-1`` with an explicit stack; a
    branch is cut once ``size + remaining <= best``.
    """
    best = 0
    nmask = masks.shape[0]
    # stack entries: (chosen set, next variable, size)
    stack_set = np.zeros(nvars + 2, dtype=np.int64)
    stack_var = np.zeros(nvars + 2, dtype=np.int64)
    stack_size = np.zeros(nvars + 2, dtype=np.int64)
    stack_stage = np.zeros(nvars + 2, dtype=np.int64)
    top = 0
    stack_set[0] = 0
    stack_var[0] = 0
    stack_size[0] = 0
    stack_stage[0] = 0
    while top >= 0:
        s = stack_set[top]
        v = stack_var[top]
        size = stack_size[top]
        stage = stack_stage[top]
        if v == nvars or size + (nvars - v) <= best:
            if size > best:
                best = size
            top -= 1
            continue
        if stage == 0:
            stack_stage[top] = 1
            cand = s | (np.int64(1) << v)
            ok = True
            for k in range(nmask):
                if masks[k] & ~cand == 0:
                    ok = False
                    break
            if ok:
                top += 1
                stack_set[top] = cand
                stack_var[top] = v + 1
                stack_size[top] = size + 1
                stack_stage[top] = 0
        elif stage == 1:
            stack_stage[top] = 2
            top += 1
            stack_set[top] = s
            stack_var[top] = v + 1
            stack_size[top] = size
            stack_stage[top] = 0
        else:
            top -= 1
    return best


def support_masks(monomials) -> np.ndarray:
    """Minimal squarefree supports of ``monomials`` as int64 bitmasks."""
    masks = set()
    for exp in monomials:
        m = 0
        for i, e in enumerate(exp):
            if e:
                m |= 1 << i
        masks.add(m)
    minimal = [m for m in masks if not any(o != m and (o & ~m) == 0 for o in masks)]
    return np.array(sorted(minimal), dtype=np.int64)


def dimension_from_leading_monomials(monomials, nvars: int) -> int:
    """Krull dimension of QQ[x]/in(I) given the generators of in(I)."""
    monomials = list(monomials)
    if nvars > MAX_VARIABLES:
        raise ValueError(f"at most {MAX_VARIABLES} variables supported")
    if any(not any(e) for e in monomials):
        return EMPTY_DIMENSION
    masks = support_masks(monomials)
    if masks.size == 0:
        return nvars
    return int(max_independent_set(masks, nvars))


def krull_dimension(
    gens: list[Polynomial],
    order: str = "grevlex",
    budget: GroebnerBudget | None = None,
    basis: list[Polynomial] | None = None,
) -> int:
    """Krull dimension of QQ[x]/<gens>; ``-1`` for the unit ideal.

    Pass a precomputed Groebner ``basis`` (for ``order``) to skip Buchberger.
    """
    gens = [g for g in gens if g]
    if basis is None:
        if not gens:
            raise ValueError("need a ring: pass at least one polynomial or a basis")
        basis = groebner(gens, order, budget)
    if not basis:
        raise ValueError("empty basis has no ring information")
    nvars = basis[0].ring.nvars
    return dimension_from_leading_monomials((b.leading_monomial(order) for b in basis), nvars)

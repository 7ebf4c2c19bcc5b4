"""Ideals with a cached Groebner basis, Jacobian minors, membership."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from itertools import combinations

from .dimension import EMPTY_DIMENSION, dimension_from_leading_monomials
from .groebner import GroebnerBudget, groebner, reduce
from .polynomial import Polynomial, Ring, RingMismatchError

__all__ = ["Ideal", "jacobian_matrix", "jacobian_minors_ideal", "ideal_membership", "determinant"]


class Ideal:
    """Ideal of ``ring`` generated by ``generators``.

    The reduced Groebner basis is cached per monomial order.  Two ideals with
    equal generator lists share nothing; caching is per instance.
    """

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} not in {ring}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: dict[str, tuple[Polynomial, ...]] = {}

    def __repr__(self):
        return f"Ideal({len(self.generators)} generators in {self.ring.nvars} variables)"

    def __add__(self, other: Ideal | Iterable[Polynomial]) -> Ideal:
        extra = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.ring, self.generators + tuple(extra))

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: str | None = None, budget: GroebnerBudget | None = None):
        order = order or self.ring.order
        if order not in self._gb:
            self._gb[order] = tuple(groebner(list(self.generators), order, budget))
        return self._gb[order]

    def set_groebner(self, basis: Sequence[Polynomial], order: str) -> None:
        """Seed the cache with a basis computed elsewhere (trusted)."""
        self._gb[order] = tuple(basis)

    def leading_monomials(self, order: str | None = None) -> list[tuple]:
        order = order or self.ring.order
        return [g.leading_monomial(order) for g in self.groebner(order)]

    def dimension(self, order: str | None = None, budget: GroebnerBudget | None = None) -> int:
        """Krull dimension of the quotient ring; ``-1`` for the unit ideal."""
        if self.is_zero():
            return self.ring.nvars
        order = order or self.ring.order
        self.groebner(order, budget)
        return dimension_from_leading_monomials(self.leading_monomials(order), self.ring.nvars)

    def is_unit(self) -> bool:
        return self.dimension() == EMPTY_DIMENSION

    def reduce(self, f: Polynomial, order: str | None = None) -> Polynomial:
        order = order or self.ring.order
        return reduce(f, list(self.groebner(order)), order)

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise RingMismatchError("polynomial and ideal live in different rings")
        if not f:
            return True
        if self.is_zero():
            return False
        return not self.reduce(f)

    __contains__ = contains


def ideal_membership(f: Polynomial, ideal: Ideal) -> bool:
    return ideal.contains(f)


def jacobian_matrix(gens: Sequence[Polynomial], variables: Sequence[str]) -> list[list[Polynomial]]:
    return [[g.derivative(v) for v in variables] for g in gens]


def determinant(m: list[list[Polynomial]]) -> Polynomial:
    """Cofactor expansion along the first row (minors here are small)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        a = m[0][j]
        if not a:
            continue
        sub = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = a * determinant(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0].ring.zero()


def jacobian_minors_ideal(
    gens: Sequence[Polynomial],
    variables: Sequence[str] | None = None,
    size: int = 1,
    include_generators: bool = False,
) -> Ideal:
    """Ideal of all ``size``-minors of the Jacobian of ``gens``.

    Minors are made monic and deduplicated; with ``include_generators`` the
    ``gens`` themselves are prepended.
    """
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    variables = list(variables) if variables is not None else list(ring.names)
    nrows, ncols = len(gens), len(variables)
    if not 1 <= size <= min(nrows, ncols):
        raise ValueError(f"minor size {size} outside 1..{min(nrows, ncols)}")
    jac = jacobian_matrix(gens, variables)
    seen = set()
    minors = []
    for rows in combinations(range(nrows), size):
        for cols in combinations(range(ncols), size):
            d = determinant([[jac[r][c] for c in cols] for r in rows])
            if d:
                key = d.monic()
                if key not in seen:
                    seen.add(key)
                    minors.append(d)
    base = list(gens) if include_generators else []
    return Ideal(ring, base + minors)

"""Buchberger's algorithm over QQ with Gebauer-Moeller pair elimination.

Internally a polynomial is a list of ``(key, exp, coeff)`` triples sorted by
decreasing key, where ``key`` is the packed order key from
:func:`~shelljet.algebra.polynomial.order_key`.  Pairs are processed by the
sugar strategy for graded orders and by the normal strategy (smallest lcm
first) for lex, where sugar ordering was seen to blow up intermediate
coefficients on small dense systems.
"""

from __future__ import annotations

import heapq
import logging
import os
from dataclasses import dataclass
from operator import add, sub

from .polynomial import Polynomial, Ring, RingMismatchError, order_key

__all__ = [
    "GroebnerBudget",
    "ResourceLimitError",
    "groebner",
    "reduce",
    "s_polynomial",
    "is_groebner",
]

log = logging.getLogger(__name__)


class ResourceLimitError(RuntimeError):
    """A Groebner computation exceeded its pair or term budget."""


@dataclass(frozen=True)
class GroebnerBudget:
    max_pairs: int = 200_000
    max_terms: int = 5_000_000

    @classmethod
    def from_env(cls) -> GroebnerBudget:
        """Defaults overridden by ``SHELLJET_MAX_PAIRS`` / ``SHELLJET_MAX_TERMS``."""
        d = cls()
        return cls(
            max_pairs=int(os.environ.get("SHELLJET_MAX_PAIRS", d.max_pairs)),
            max_terms=int(os.environ.get("SHELLJET_MAX_TERMS", d.max_terms)),
        )


def _mask(exp) -> int:
    m = 0
    for i, e in enumerate(exp):
        if e:
            m |= 1 << i
    return m


class _Poly:
    __slots__ = ("terms", "lkey", "lexp", "mask", "sugar")

    def __init__(self, terms, sugar):
        self.terms = terms
        self.lkey, self.lexp, _ = terms[0]
        self.mask = _mask(self.lexp)
        self.sugar = sugar


def _encode(p: Polynomial, key) -> list:
    return sorted(((key(e), e, c) for e, c in p._terms.items()), reverse=True)


def _decode(ring: Ring, terms) -> Polynomial:
    return Polynomial(ring, {e: c for _, e, c in terms}, _trusted=True)


class _Reducer:
    """Divisor lookup over a growing list of monic basis polynomials."""

    def __init__(self):
        self.polys: list[_Poly] = []
        self.active: list[bool] = []

    def add(self, p: _Poly):
        self.polys.append(p)
        self.active.append(True)
        return len(self.polys) - 1

    def find(self, exp, emask):
        for i, g in enumerate(self.polys):
            if self.active[i] and not (g.mask & ~emask):
                for a, b in zip(g.lexp, exp):
                    if a > b:
                        break
                else:
                    return g
        return None


def _normal_form(terms, reducer: _Reducer, budget_state, full: bool = True):
    """Reduce ``terms`` modulo the active reducer polys.

    Returns the sorted remainder list; leading coefficient untouched.
    With ``full=False`` stops at the first irreducible term (top reduction)
    and returns it with the unreduced tail.
    """
    work = {k: [e, c] for k, e, c in terms}
    heap = [-k for k in work]
    heapq.heapify(heap)
    out = []
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        k = -pop(heap)
        entry = work.pop(k, None)
        if entry is None:
            continue
        exp, c = entry
        g = reducer.find(exp, _mask(exp))
        if g is None:
            out.append((k, exp, c))
            if not full:
                rest = sorted(((kk, v[0], v[1]) for kk, v in work.items()), reverse=True)
                return out + rest
            continue
        qk = k - g.lkey
        qe = tuple(map(sub, exp, g.lexp))
        for gk, ge, gc in g.terms[1:]:
            nk = gk + qk
            v = work.get(nk)
            if v is None:
                work[nk] = [tuple(map(add, ge, qe)), -c * gc]
                push(heap, -nk)
            else:
                nc = v[1] - c * gc
                if nc:
                    v[1] = nc
                else:
                    del work[nk]
        if len(work) > budget_state.max_terms:
            raise ResourceLimitError(f"intermediate polynomial exceeded {budget_state.max_terms} terms")
    return out


def _monic(terms):
    lc = terms[0][2]
    if lc == 1:
        return terms
    inv = 1 / lc
    return [(k, e, c * inv) for k, e, c in terms]


def _check_ring(polys):
    rings = {p.ring for p in polys}
    if len(rings) > 1:
        raise RingMismatchError("polynomials live in different rings")


def reduce(f: Polynomial, basis: list[Polynomial], order: str = "grevlex") -> Polynomial:
    """Remainder of multivariate division of ``f`` by ``basis``.

    No term of the result is divisible by a leading term of ``basis`` and
    ``f - result`` lies in the ideal of ``basis``.
    """
    _check_ring([f, *basis])
    key = order_key(order, f.ring.nvars)
    red = _Reducer()
    for b in basis:
        if b:
            red.add(_Poly(_monic(_encode(b, key)), 0))
    if not f:
        return f
    out = _normal_form(_encode(f, key), red, GroebnerBudget.from_env())
    return _decode(f.ring, out)


def s_polynomial(f: Polynomial, g: Polynomial, order: str = "grevlex") -> Polynomial:
    ef, cf = f.leading_term(order)
    eg, cg = g.leading_term(order)
    lcm = tuple(map(max, ef, eg))
    return f.mul_monomial(tuple(map(sub, lcm, ef)), 1 / cf) - g.mul_monomial(
        tuple(map(sub, lcm, eg)), 1 / cg
    )


def _lcm(a, b):
    return tuple(map(max, a, b))


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def groebner(
    gens: list[Polynomial],
    order: str = "grevlex",
    budget: GroebnerBudget | None = None,
) -> list[Polynomial]:
    """Reduced Groebner basis, monic and sorted by increasing leading term."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    _check_ring(gens)
    ring = gens[0].ring
    budget = budget or GroebnerBudget.from_env()
    key = order_key(order, ring.nvars)
    red = _Reducer()
    normal = order == "lex"
    pairs: list = []  # heap of (rank, sugar, counter, i, j, lcm); rank is sugar or the lcm key
    counter = 0
    processed = 0

    def update(h):
        nonlocal pairs, counter
        hp = red.polys[h]
        lh = hp.lexp
        live = [i for i, a in enumerate(red.active) if a and i != h]
        cand = []
        for i in live:
            e = _lcm(red.polys[i].lexp, lh)
            cand.append((i, e, not (red.polys[i].mask & hp.mask)))
        # chain criterion among the new pairs (Gebauer-Moeller UPDATE)
        kept = []
        while cand:
            i, e, coprime = cand.pop(0)
            if coprime or not any(_divides(e2, e) for _, e2, _ in cand) and not any(
                _divides(e2, e) for _, e2, _ in kept
            ):
                kept.append((i, e, coprime))
        # drop old pairs whose lcm is strictly covered through h
        old = []
        for item in pairs:
            _, _, _, i, j, e = item
            if (
                _divides(lh, e)
                and _lcm(red.polys[i].lexp, lh) != e
                and _lcm(red.polys[j].lexp, lh) != e
            ):
                continue
            old.append(item)
        # product criterion: coprime leaders need no S-pair
        for i, e, coprime in kept:
            if coprime:
                continue
            g = red.polys[i]
            de = sum(e)
            sugar = max(g.sugar + de - sum(g.lexp), hp.sugar + de - sum(lh))
            counter += 1
            old.append((key(e) if normal else sugar, sugar, counter, i, h, e))
        heapq.heapify(old)
        pairs = old
        for i in live:
            if _divides(lh, red.polys[i].lexp):
                red.active[i] = False

    # seed: interreduce input by inserting one at a time
    seed = sorted((_encode(g, key) for g in gens), key=lambda t: t[0][0])
    for terms in seed:
        sugar = max(sum(e) for _, e, _ in terms)
        nf = _normal_form(terms, red, budget)
        if nf:
            h = red.add(_Poly(_monic(nf), sugar))
            update(h)

    while pairs:
        _, s, _, i, j, e = heapq.heappop(pairs)
        processed += 1
        if processed > budget.max_pairs:
            raise ResourceLimitError(f"Groebner pair budget of {budget.max_pairs} exhausted")
        pi, pj = red.polys[i], red.polys[j]
        spoly = _spair_terms(pi, pj, e, key)
        if not spoly:
            continue
        nf = _normal_form(spoly, red, budget)
        if nf:
            h = red.add(_Poly(_monic(nf), s))
            update(h)

    basis = [red.polys[i] for i, a in enumerate(red.active) if a]
    log.debug("groebner: %d pairs processed, %d basis elements", processed, len(basis))
    return _interreduce(ring, basis, key, budget)


def _spair_terms(pi: _Poly, pj: _Poly, lcm, key):
    """S-polynomial of two monic polys, without their cancelling leaders."""
    qi = tuple(map(sub, lcm, pi.lexp))
    qj = tuple(map(sub, lcm, pj.lexp))
    ki, kj = key(qi), key(qj)
    acc = {}
    for k, e, c in pi.terms[1:]:
        acc[k + ki] = [tuple(map(add, e, qi)), c]
    for k, e, c in pj.terms[1:]:
        nk = k + kj
        v = acc.get(nk)
        if v is None:
            acc[nk] = [tuple(map(add, e, qj)), -c]
        else:
            nc = v[1] - c
            if nc:
                v[1] = nc
            else:
                del acc[nk]
    return sorted(((k, v[0], v[1]) for k, v in acc.items()), reverse=True)


def _interreduce(ring, basis: list[_Poly], key, budget) -> list[Polynomial]:
    basis = sorted(basis, key=lambda p: p.lkey)
    # drop elements whose leader is divisible by another leader
    minimal = []
    for p in basis:
        if not any(_divides(q.lexp, p.lexp) for q in minimal):
            minimal.append(p)
    out = []
    for idx, p in enumerate(minimal):
        red = _Reducer()
        for q in minimal:
            if q is not p:
                red.add(q)
        tail = _normal_form(p.terms[1:], red, budget) if len(p.terms) > 1 else []
        out.append(_decode(ring, [p.terms[0], *tail]))
    return out


def is_groebner(basis: list[Polynomial], order: str = "grevlex") -> bool:
    """Every S-polynomial reduces to zero modulo ``basis``."""
    basis = [b for b in basis if b]
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if reduce(s_polynomial(basis[a], basis[b], order), basis, order):
                return False
    return True


def leading_monomials(basis: list[Polynomial], order: str = "grevlex") -> list[tuple]:
    return [b.leading_monomial(order) for b in basis]

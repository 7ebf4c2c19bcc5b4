"""Weight combinatorics of torus modules.

A torus module is its weight multiset.  The null cone is the union of the
linear spaces Z_lambda spanned by the weight vectors positive on a
cocharacter lambda; everything below reduces to exact LPs over those
positivity patterns and to the flats of the weight matroid.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field

from gmpy2 import mpq

from ..algebra import linalg
from ..repmodel import RepError, WeightData, is_orthogonal
from .lp import solve_inequalities, strictly_positive_relation

__all__ = [
    "MAX_SUBSET_WEIGHTS",
    "NotComputedError",
    "ChamberCertificate",
    "ModularityProfile",
    "SliceDescriptor",
    "is_unstable",
    "m0",
    "m0_orthogonal_formula",
    "chambers",
    "null_cone_dim",
    "flats",
    "modularity_profile",
    "is_stable",
    "has_fpig",
    "torus_slice_reps",
    "isotropy_subtori",
    "weight_rank",
]

MAX_SUBSET_WEIGHTS = 20


class NotComputedError(RuntimeError):
    """Input exceeds the subset-enumeration cap; no approximate answer is given."""


@dataclass(frozen=True)
class ChamberCertificate:
    """An integral cocharacter with <lambda, a_i> >= 1 on ``positive_support``."""

    cocharacter: tuple[int, ...]
    positive_support: frozenset[int]

    def verify(self, w: WeightData, support=None) -> bool:
        idx = self.positive_support if support is None else support
        for i in idx:
            if sum(l * a for l, a in zip(self.cocharacter, w.weights[i])) < 1:
                return False
        return True


def _pairing(lam, a) -> mpq:
    return sum((mpq(l) * a_k for l, a_k in zip(lam, a)), mpq(0))


def _integral(lam) -> tuple[int, ...]:
    den = 1
    for v in lam:
        den = math.lcm(den, int(mpq(v).denominator))
    return tuple(int(mpq(v) * den) for v in lam)


def _positive_witness(vectors, method="auto"):
    """lambda with <lambda, v> >= 1 for every v, or None."""
    if not vectors:
        return None
    return solve_inequalities([list(v) for v in vectors], [1] * len(vectors), method)


def is_unstable(w: WeightData, support, method: str = "auto") -> ChamberCertificate | None:
    """Certificate that every vector with this weight support is unstable.

    Zero weights never admit a positive cocharacter, so a support that
    contains one returns None.
    """
    support = sorted(set(support))
    if not support:
        raise ValueError("support must be nonempty")
    vecs = [w.weights[i] for i in support]
    if any(not any(v) for v in vecs):
        return None
    lam = _positive_witness(vecs, method)
    if lam is None:
        return None
    lam = _integral(lam)
    pos = frozenset(i for i, a in enumerate(w.weights) if _pairing(lam, a) > 0)
    cert = ChamberCertificate(lam, pos)
    assert cert.verify(w, support)
    return cert


def _classes(w: WeightData):
    """Distinct nonzero weights with multiplicities, largest multiplicity first."""
    counts = Counter(a for a in w.weights if any(a))
    items = sorted(counts.items(), key=lambda t: (-t[1], t[0]))
    if len(items) > MAX_SUBSET_WEIGHTS:
        raise NotComputedError(f"{len(items)} distinct weights exceed the cap of {MAX_SUBSET_WEIGHTS}")
    return [a for a, _ in items], [c for _, c in items]


def m0(w: WeightData, method: str = "auto") -> int:
    """Largest multiplicity of a weight set admitting a strictly positive cocharacter.

    Branch and bound over distinct weights: a set whose LP is infeasible
    prunes all of its supersets, and every feasible witness raises the
    incumbent to the multiplicity of all weights it makes positive.
    """
    ws, mult = _classes(w)
    n = len(ws)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + mult[i]
    best = 0

    def positive_mult(lam):
        return sum(m for a, m in zip(ws, mult) if _pairing(lam, a) > 0)

    def rec(i, chosen, cur):
        nonlocal best
        if cur + suffix[i] <= best:
            return
        if i == n:
            best = max(best, cur)
            return
        cand = chosen + [ws[i]]
        lam = _positive_witness(cand, method)
        if lam is not None:
            best = max(best, positive_mult(lam))
            rec(i + 1, cand, cur + mult[i])
        rec(i + 1, chosen, cur)

    rec(0, [], 0)
    return best


def m0_orthogonal_formula(w: WeightData) -> int:
    """(dim V - dim V^T) / 2 for an orthogonal weight multiset."""
    if not is_orthogonal(w):
        raise RepError("weights are not symmetric under negation")
    return (w.dim - w.dim_fixed) // 2


def chambers(weights, method: str = "auto") -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """Open regions of the arrangement of hyperplanes a^perp, a a nonzero weight.

    Each region is returned as (integral cocharacter inside it, indices of
    ``weights`` positive on it).  Regions are found by extending feasible
    sign patterns one distinct weight at a time; the parent's witness
    settles one child without an LP whenever it is nonzero on the new weight.
    """
    weights = [tuple(a) for a in weights]
    distinct = sorted({a for a in weights if any(a)})
    if len(distinct) > MAX_SUBSET_WEIGHTS:
        raise NotComputedError(f"{len(distinct)} distinct weights exceed the cap of {MAX_SUBSET_WEIGHTS}")
    if not weights:
        return []
    r = len(weights[0])
    out = []
    stack = [(0, [], None)]
    while stack:
        i, signed, lam = stack.pop()
        if i == len(distinct):
            if lam is None:
                lam = [mpq(0)] * r
            lam = _integral(lam)
            pos = frozenset(k for k, a in enumerate(weights) if _pairing(lam, a) > 0)
            out.append((lam, pos))
            continue
        a = distinct[i]
        for sign in (1, -1):
            row = tuple(sign * v for v in a)
            if lam is not None and _pairing(lam, row) > 0:
                scale = 1 / _pairing(lam, row)
                child = [v * scale for v in lam] if scale > 1 else lam
                stack.append((i + 1, signed + [row], child))
                continue
            child = _positive_witness(signed + [row], method)
            if child is not None:
                stack.append((i + 1, signed + [row], child))
    out.sort(key=lambda t: sorted(t[1]))
    return out


def null_cone_dim(w: WeightData, method: str = "auto") -> int:
    """dim N(V) as the largest Z_lambda over all chambers (independent of :func:`m0`)."""
    if not w.nonzero:
        return 0
    return max(len(pos) for _, pos in chambers(w.weights, method))


def weight_rank(weights) -> int:
    weights = [a for a in weights if any(a)]
    return linalg.rank(weights) if weights else 0


def flats(w: WeightData) -> list[tuple[frozenset, int]]:
    """Flats of the matroid of distinct nonzero weights as (weight set, rank)."""
    distinct = sorted({a for a in w.weights if any(a)})
    if len(distinct) > MAX_SUBSET_WEIGHTS:
        raise NotComputedError(f"{len(distinct)} distinct weights exceed the cap of {MAX_SUBSET_WEIGHTS}")
    total = weight_rank(distinct)
    seen = {frozenset(): 0}
    for k in range(1, total + 1):
        for combo in itertools.combinations(distinct, k):
            if weight_rank(combo) != k:
                continue
            closure = frozenset(a for a in distinct if linalg.in_span(list(combo), a))
            seen.setdefault(closure, k)
    return sorted(seen.items(), key=lambda t: (t[1], sorted(t[0])))


@dataclass(frozen=True)
class ModularityProfile:
    torus_rank: int
    dim: int
    entries: dict[int, int | None]
    max_k: int

    def is_k_modular(self, k: int) -> bool:
        return self.max_k >= k

    def codim(self, r: int) -> int | None:
        d = self.entries.get(r)
        return None if d is None else self.dim - d


def modularity_profile(w: WeightData) -> ModularityProfile:
    """dim V_(r) for every isotropy dimension r and the largest k with V k-modular.

    Vectors supported on the weights of a flat F of rank s have isotropy of
    dimension rank T - s, so dim V_(r) is the largest multiplicity of a flat
    of rank (rank T - r), zero weights included.
    """
    counts = Counter(w.weights)
    fixed = w.dim_fixed
    best: dict[int, int] = {}
    for fl, rk in flats(w):
        mult = fixed + sum(counts[a] for a in fl)
        r = w.torus_rank - rk
        best[r] = max(best.get(r, 0), mult)
    entries = {r: best.get(r) for r in range(w.torus_rank + 1)}
    slack = [w.dim - d - r for r, d in entries.items() if r >= 1 and d is not None]
    return ModularityProfile(w.torus_rank, w.dim, entries, min(slack) if slack else w.dim)


def is_stable(w: WeightData) -> bool:
    """0 lies in the relative interior of the convex hull of the nonzero weights."""
    distinct = sorted({a for a in w.weights if any(a)})
    return strictly_positive_relation(distinct) is not None


def has_fpig(w: WeightData) -> bool:
    """Generic isotropy finite: weights span the character space and V is stable."""
    return weight_rank(w.weights) == w.torus_rank and is_stable(w)


def _primitive(v) -> tuple[int, ...]:
    ints = _integral(v)
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g > 1:
        ints = tuple(x // g for x in ints)
    first = next((x for x in ints if x), 0)
    return tuple(-x for x in ints) if first < 0 else ints


def _annihilator(vectors, r: int) -> tuple[tuple[int, ...], ...]:
    vectors = [list(a) for a in vectors if any(a)]
    basis = linalg.nullspace(vectors, r) if vectors else linalg.nullspace([], r)
    return tuple(_primitive(v) for v in basis)


@dataclass(frozen=True)
class SliceDescriptor:
    """Slice data at closed orbits whose weight support spans the flat ``flat``.

    ``h_basis`` spans the cocharacters of the isotropy subtorus H; W0 weights
    are expressed in those coordinates.  ``dim_h == 0`` is the principal
    (finite isotropy) case.
    """

    flat: frozenset
    h_basis: tuple[tuple[int, ...], ...]
    w0_weights: WeightData
    dim_w_fixed: int
    dim_w0_fixed_t: int = 0
    labels: tuple[str, ...] = field(default=())

    @property
    def dim_h(self) -> int:
        return len(self.h_basis)

    @property
    def is_finite(self) -> bool:
        return self.dim_h == 0

    @property
    def dim_w0(self) -> int:
        return self.w0_weights.dim

    @property
    def dim_w(self) -> int:
        return self.dim_w_fixed + self.dim_w0


def _restrict(weights, h_basis):
    return tuple(tuple(int(_pairing(h, a)) for h in h_basis) for a in weights)


def torus_slice_reps(w: WeightData) -> list[SliceDescriptor]:
    """Slice representations of the closed orbits of a torus module.

    A point with support in flat F has a closed orbit iff the weights of F
    positively span F.  Its isotropy H is the annihilator of F, the tangent
    space to the orbit uses rank F directions among the F-weights, and W0
    collects the weights outside F.
    """
    counts = Counter(w.weights)
    out = []
    for fl, rk in flats(w):
        if strictly_positive_relation(sorted(fl)) is None:
            continue
        h = _annihilator(sorted(fl), w.torus_rank)
        w0 = [a for a in w.weights if any(a) and a not in fl]
        dim_fixed = w.dim_fixed + sum(counts[a] for a in fl) - rk
        out.append(
            SliceDescriptor(
                flat=fl,
                h_basis=h,
                w0_weights=WeightData(len(h), _restrict(w0, h)) if h else WeightData(0, ()),
                dim_w_fixed=dim_fixed,
            )
        )
    return out


def isotropy_subtori(w: WeightData) -> list[tuple[tuple[int, ...], ...]]:
    """Every identity component of an isotropy group, as a cocharacter basis.

    These are the annihilators of all flats (closed orbit or not), from the
    full torus at the origin down to the generic isotropy.
    """
    seen = []
    for fl, _ in flats(w):
        h = _annihilator(sorted(fl), w.torus_rank)
        if h not in seen:
            seen.append(h)
    return seen

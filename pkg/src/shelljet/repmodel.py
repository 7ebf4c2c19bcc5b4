"""Connected reductive groups and their modules as explicit matrices.

Classical factors are realised so that the standard maximal torus is
diagonal: SL(n) on C^n with H_i = E_ii - E_{i+1,i+1}; SO(n) and Sp(2n)
preserve the antidiagonal form J (resp. the symplectic form built from J),
with torus generators E_kk - E_{k'k'} where k' = N + 1 - k.  Every Lie basis
lists the torus generators of each factor first, followed by root vectors,
so the adjoint module is diagonal for the torus as well.

SO(n) can alternatively be built in its compact realisation (skew-symmetric
matrices preserving the identity form) with ``so_form="compact"``; its torus
is then not diagonal over QQ and the declared weights are analytic.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from .algebra import linalg

__all__ = [
    "Factor",
    "GroupDescriptor",
    "Summand",
    "ModuleDescriptor",
    "WeightData",
    "RepAction",
    "RepError",
    "parse_group",
    "build_action",
    "dual",
    "direct_sum",
    "zero_module",
    "is_orthogonal",
    "lagrangian_choices",
    "torus_action",
    "check_bracket_closure",
    "check_weight_diagonal",
]


class RepError(ValueError):
    """Invalid group/module description."""


# --------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class Factor:
    family: str  # "torus" | "sl" | "so" | "sp"
    n: int  # torus rank; SL(n); SO(n); Sp(2n) stores n

    def __post_init__(self):
        if self.family not in ("torus", "sl", "so", "sp"):
            raise RepError(f"unknown group family {self.family!r}")
        if self.family == "torus" and self.n < 1:
            raise RepError("torus rank must be >= 1")
        if self.family in ("sl", "so") and self.n < 2:
            raise RepError(f"{self.label} requires n >= 2")
        if self.family == "sp" and self.n < 1:
            raise RepError("Sp(2n) requires n >= 1")

    @property
    def dim(self) -> int:
        n = self.n
        return {"torus": n, "sl": n * n - 1, "so": n * (n - 1) // 2, "sp": n * (2 * n + 1)}[self.family]

    @property
    def rank(self) -> int:
        n = self.n
        return {"torus": n, "sl": n - 1, "so": n // 2, "sp": n}[self.family]

    @property
    def std_dim(self) -> int:
        return {"torus": self.n, "sl": self.n, "so": self.n, "sp": 2 * self.n}[self.family]

    @property
    def label(self) -> str:
        return {"torus": "T", "sl": "SL", "so": "SO", "sp": "Sp"}[self.family] + str(self.std_dim if self.family != "torus" else self.n)


@dataclass(frozen=True)
class GroupDescriptor:
    factors: tuple[Factor, ...]

    def __post_init__(self):
        if not self.factors:
            raise RepError("a group needs at least one factor")

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def is_torus(self) -> bool:
        return all(f.family == "torus" for f in self.factors)

    @property
    def label(self) -> str:
        return " x ".join(f.label for f in self.factors)


_GROUP_RE = re.compile(r"^\s*(T|Torus|SL|SO|Sp)\s*\(?\s*(\d+)\s*\)?\s*$", re.IGNORECASE)


def parse_factor(text: str) -> Factor:
    """``"SL2"``, ``"SO(3)"``, ``"Sp4"`` (= Sp(4)), ``"T2"``/``"Torus(2)"``."""
    m = _GROUP_RE.match(text)
    if not m:
        raise RepError(f"cannot parse group factor {text!r}")
    fam, n = m.group(1).lower(), int(m.group(2))
    if fam in ("t", "torus"):
        return Factor("torus", n)
    if fam == "sp":
        if n % 2:
            raise RepError(f"Sp({n}) needs an even size")
        return Factor("sp", n // 2)
    return Factor(fam, n)


def parse_group(spec) -> GroupDescriptor:
    if isinstance(spec, GroupDescriptor):
        return spec
    if isinstance(spec, str):
        spec = [s for s in re.split(r"[x×,]", spec) if s.strip()]
    return GroupDescriptor(tuple(f if isinstance(f, Factor) else parse_factor(f) for f in spec))


# --------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class Summand:
    """One isotypic block: ``multiplicity`` copies of a built-in module.

    ``tag`` is ``"standard"``, ``"adjoint"`` or ``"weights"``; weight
    summands belong to a torus factor and list one integer weight per basis
    vector.  Other factors act trivially on the block.
    """

    factor: int
    tag: str
    multiplicity: int = 1
    dual: bool = False
    weights: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.multiplicity < 1:
            raise RepError("multiplicity must be >= 1")
        if self.tag not in ("standard", "adjoint", "weights", "trivial"):
            raise RepError(f"unknown module tag {self.tag!r}")
        if self.tag == "weights" and self.weights is None:
            raise RepError("weight summand needs a weight list")


@dataclass(frozen=True)
class ModuleDescriptor:
    summands: tuple[Summand, ...]


@dataclass(frozen=True)
class WeightData:
    """Multiset of torus weights (zero weights included)."""

    torus_rank: int
    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for w in self.weights:
            if len(w) != self.torus_rank:
                raise RepError(f"weight {w} has length != torus rank {self.torus_rank}")

    @classmethod
    def from_list(cls, weights, torus_rank: int | None = None) -> WeightData:
        rows = []
        for w in weights:
            if isinstance(w, (int, np.integer)):
                w = (w,)
            row = []
            for v in w:
                if isinstance(v, float) and not v.is_integer():
                    raise RepError(f"non-integer weight entry {v}")
                if isinstance(v, str) or int(v) != v:
                    raise RepError(f"non-integer weight entry {v!r}")
                row.append(int(v))
            rows.append(tuple(row))
        if torus_rank is None:
            if not rows:
                raise RepError("torus rank needed for an empty weight list")
            torus_rank = len(rows[0])
        return cls(torus_rank, tuple(rows))

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def dim_fixed(self) -> int:
        return sum(1 for w in self.weights if not any(w))

    @property
    def nonzero(self) -> tuple[tuple[int, ...], ...]:
        return tuple(w for w in self.weights if any(w))

    def negate(self) -> WeightData:
        return WeightData(self.torus_rank, tuple(tuple(-v for v in w) for w in self.weights))

    def __add__(self, other: WeightData) -> WeightData:
        if other.torus_rank != self.torus_rank:
            raise RepError("torus rank mismatch")
        return WeightData(self.torus_rank, self.weights + other.weights)

    def multiset(self) -> Counter:
        return Counter(self.weights)

    def same_multiset(self, other: WeightData) -> bool:
        return self.torus_rank == other.torus_rank and self.multiset() == other.multiset()

    def as_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=np.int64).reshape(len(self.weights), self.torus_rank)


def _freeze(m: np.ndarray) -> np.ndarray:
    m.flags.writeable = False
    return m


def _qq_array(rows) -> np.ndarray:
    a = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            a[i, j] = mpq(v)
    return a


@dataclass(frozen=True)
class RepAction:
    """Lie algebra of ``group`` acting on C^dim by explicit matrices."""

    group: GroupDescriptor
    dim: int
    lie_basis: tuple[np.ndarray, ...]
    weight_data: WeightData
    torus_indices: tuple[int, ...]
    labels: tuple[str, ...] = field(default=())

    @property
    def dim_g(self) -> int:
        return len(self.lie_basis)

    def matrix(self, i: int) -> np.ndarray:
        return self.lie_basis[i]

    def act(self, i: int, v) -> list[mpq]:
        """A_i v for a rational vector v."""
        a = self.lie_basis[i]
        return [sum((a[r, c] * mpq(v[c]) for c in range(self.dim)), mpq(0)) for r in range(self.dim)]


# --------------------------------------------------------------------------
# Lie algebra bases in the defining representation


def _E(n, i, j) -> list[list[int]]:
    m = [[0] * n for _ in range(n)]
    m[i][j] = 1
    return m


def _lin(*pairs) -> list[list[int]]:
    n = len(pairs[0][1])
    out = [[0] * n for _ in range(n)]
    for c, m in pairs:
        for i in range(n):
            for j in range(n):
                out[i][j] += c * m[i][j]
    return out


def _factor_basis(f: Factor, so_form: str = "split") -> tuple[list[list[list[int]]], int]:
    """Defining-representation basis; the first ``rank`` elements span the torus."""
    n = f.std_dim
    if f.family == "sl":
        torus = [_lin((1, _E(n, i, i)), (-1, _E(n, i + 1, i + 1))) for i in range(n - 1)]
        roots = [_E(n, i, j) for i in range(n) for j in range(n) if i != j]
        return torus + roots, n - 1
    if f.family == "so" and so_form == "compact":
        r = f.rank
        torus = [_lin((1, _E(n, 2 * k, 2 * k + 1)), (-1, _E(n, 2 * k + 1, 2 * k))) for k in range(r)]
        rest = []
        for a in range(n):
            for b in range(a + 1, n):
                if a % 2 == 0 and b == a + 1 and a // 2 < r:
                    continue
                rest.append(_lin((1, _E(n, a, b)), (-1, _E(n, b, a))))
        return torus + rest, r
    if f.family == "so":
        # A = J S, S antisymmetric, J antidiagonal
        r = f.rank
        torus = [_lin((1, _E(n, k, k)), (-1, _E(n, n - 1 - k, n - 1 - k))) for k in range(r)]
        rest = []
        for a in range(n):
            for b in range(a + 1, n):
                if a + b == n - 1:
                    continue
                rest.append(_lin((1, _E(n, n - 1 - a, b)), (-1, _E(n, n - 1 - b, a))))
        return torus + rest, r
    if f.family == "sp":
        # form Omega = [[0, J],[-J, 0]];  A = -Omega S with S symmetric
        m = f.n
        N = 2 * m
        omega = [[0] * N for _ in range(N)]
        for i in range(m):
            omega[i][N - 1 - i] = 1
            omega[N - 1 - i][i] = -1
        torus = [_lin((1, _E(N, k, k)), (-1, _E(N, N - 1 - k, N - 1 - k))) for k in range(m)]
        rest = []
        for a in range(N):
            for b in range(a, N):
                s = _E(N, a, b) if a == b else _lin((1, _E(N, a, b)), (1, _E(N, b, a)))
                A = [[-sum(omega[i][k] * s[k][j] for k in range(N)) for j in range(N)] for i in range(N)]
                if any(A[i][j] for i in range(N) for j in range(N) if i != j):
                    rest.append(A)
        return torus + rest, m
    raise RepError(f"no matrix basis for {f.family}")


def _bracket(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] - b[i][k] * a[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def _adjoint_matrices(basis) -> list[list[list[mpq]]]:
    """Matrices of ad(X) in ``basis`` (columns = coordinates of [X, B_j])."""
    flat = [[v for row in b for v in row] for b in basis]
    cols = [list(c) for c in zip(*flat)]  # n^2 x d
    red, piv = linalg.rref(cols)
    if len(piv) != len(basis):
        raise RepError("Lie basis is linearly dependent")
    out = []
    d = len(basis)
    for x in basis:
        mat = [[mpq(0)] * d for _ in range(d)]
        for j, b in enumerate(basis):
            target = [v for row in _bracket(x, b) for v in row]
            coords = linalg.solve(cols, target)
            if coords is None:
                raise RepError("bracket leaves the span of the basis")
            for i in range(d):
                mat[i][j] = coords[i]
        out.append(mat)
    return out


# --------------------------------------------------------------------------
# building actions


def _block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.empty((n, n), dtype=object)
    out[:] = mpq(0)
    k = 0
    for b in blocks:
        s = b.shape[0]
        out[k : k + s, k : k + s] = b
        k += s
    return out


def _summand_blocks(group: GroupDescriptor, s: Summand, so_form: str):
    """Per-Lie-basis-element blocks and weights (in full torus coordinates)."""
    if not 0 <= s.factor < len(group.factors):
        raise RepError(f"summand refers to factor {s.factor} of {len(group.factors)}")
    f = group.factors[s.factor]
    rank_offset = sum(g.rank for g in group.factors[: s.factor])
    if s.tag == "weights":
        if f.family != "torus":
            raise RepError("explicit weight summands are only valid for torus factors")
        w = WeightData.from_list(s.weights, f.n)
        mats = [_qq_array([[w.weights[i][k] if i == j else 0 for j in range(w.dim)] for i in range(w.dim)]) for k in range(f.n)]
        local_weights = list(w.weights)
    elif s.tag == "trivial":
        d = s.weights and len(s.weights) or 1
        mats = [_qq_array([[0] * d for _ in range(d)]) for _ in range(f.dim)]
        local_weights = [(0,) * f.rank] * d
    else:
        if f.family == "torus":
            raise RepError(f"tag {s.tag!r} is not defined for a torus factor; use explicit weights")
        basis, r = _factor_basis(f, so_form)
        if s.tag == "standard":
            mats = [_qq_array(b) for b in basis]
        else:
            mats = [_qq_array(m) for m in _adjoint_matrices(basis)]
        local_weights = _diagonal_weights(mats[:r], f, so_form, s.tag)
    if s.dual:
        mats = [_qq_array((-m.T).tolist()) for m in mats]
        local_weights = [tuple(-v for v in w) for w in local_weights]
    d = mats[0].shape[0]
    total_rank = group.rank
    weights = []
    for w in local_weights:
        full = [0] * total_rank
        full[rank_offset : rank_offset + f.rank] = w
        weights.append(tuple(full))
    # tile multiplicity
    mats = [_block_diag([m] * s.multiplicity) for m in mats]
    weights = weights * s.multiplicity
    return mats, weights, d * s.multiplicity


def _diagonal_weights(torus_mats, f: Factor, so_form: str, tag: str):
    d = torus_mats[0].shape[0] if torus_mats else 0
    if f.family == "so" and so_form == "compact":
        # eigenvalues of the rotation generators are +-i * weight
        n = f.n
        if tag == "standard":
            ws = []
            for k in range(f.rank):
                e = [0] * f.rank
                e[k] = 1
                ws += [tuple(e), tuple(-v for v in e)]
            if n % 2:
                ws.append((0,) * f.rank)
            return ws
        split = _factor_basis(f, "split")
        mats = _adjoint_matrices(split[0])
        return [tuple(int(mats[k][i][i]) for k in range(f.rank)) for i in range(len(mats))]
    for m in torus_mats:
        for i in range(d):
            for j in range(d):
                if i != j and m[i, j] != 0:
                    raise RepError("torus generator is not diagonal in the module basis")
    return [tuple(int(m[i, i]) for m in torus_mats) for i in range(d)]


def build_action(group, module: ModuleDescriptor, so_form: str = "split") -> RepAction:
    """Explicit Lie-algebra matrices of ``group`` on ``module``."""
    group = parse_group(group)
    if not module.summands:
        return zero_module(group)
    per_factor_dims = [f.dim for f in group.factors]
    lie_dim = sum(per_factor_dims)
    blocks: list[list[np.ndarray]] = [[] for _ in range(lie_dim)]
    weights: list[tuple[int, ...]] = []
    for s in module.summands:
        mats, ws, d = _summand_blocks(group, s, so_form)
        weights += ws
        offset = 0
        for fi, fdim in enumerate(per_factor_dims):
            for k in range(fdim):
                if fi == s.factor:
                    blocks[offset + k].append(mats[k])
                else:
                    z = np.empty((d, d), dtype=object)
                    z[:] = mpq(0)
                    blocks[offset + k].append(z)
            offset += fdim
    lie_basis = tuple(_freeze(_block_diag(b)) for b in blocks)
    torus_idx = []
    labels = []
    offset = 0
    for f in group.factors:
        torus_idx += [offset + k for k in range(f.rank)]
        labels += [f"{f.label}.h{k + 1}" for k in range(f.rank)] + [
            f"{f.label}.e{k + 1}" for k in range(f.dim - f.rank)
        ]
        offset += f.dim
    return RepAction(
        group=group,
        dim=len(weights),
        lie_basis=lie_basis,
        weight_data=WeightData(group.rank, tuple(weights)),
        torus_indices=tuple(torus_idx),
        labels=tuple(labels),
    )


def torus_action(weights, torus_rank: int | None = None) -> RepAction:
    """Torus T^r acting with the given weight list."""
    wd = WeightData.from_list(weights, torus_rank)
    group = GroupDescriptor((Factor("torus", wd.torus_rank),))
    return build_action(group, ModuleDescriptor((Summand(0, "weights", weights=wd.weights),)))


def zero_module(group) -> RepAction:
    group = parse_group(group)
    return RepAction(
        group=group,
        dim=0,
        lie_basis=tuple(_freeze(np.empty((0, 0), dtype=object)) for _ in range(group.dim)),
        weight_data=WeightData(group.rank, ()),
        torus_indices=tuple(range(group.rank)),
    )


def dual(a: RepAction) -> RepAction:
    """Contragredient action: A -> -A^T, weights negated."""
    return RepAction(
        group=a.group,
        dim=a.dim,
        lie_basis=tuple(_freeze(_qq_array((-m.T).tolist()) if a.dim else m.copy()) for m in a.lie_basis),
        weight_data=a.weight_data.negate(),
        torus_indices=a.torus_indices,
        labels=a.labels,
    )


def direct_sum(a: RepAction, b: RepAction) -> RepAction:
    if a.group != b.group or a.dim_g != b.dim_g:
        raise RepError(f"group mismatch: {a.group.label} vs {b.group.label}")
    if a.dim == 0:
        return b
    if b.dim == 0:
        return a
    return RepAction(
        group=a.group,
        dim=a.dim + b.dim,
        lie_basis=tuple(_freeze(_block_diag([x, y])) for x, y in zip(a.lie_basis, b.lie_basis)),
        weight_data=a.weight_data + b.weight_data,
        torus_indices=a.torus_indices,
        labels=a.labels,
    )


# --------------------------------------------------------------------------
# weight combinatorics


def is_orthogonal(w: WeightData) -> bool:
    """Weight multiset invariant under negation.

    Necessary for an invariant symmetric form on any module; for a torus
    module it is also sufficient (pair V_l with V_-l).
    """
    return w.multiset() == w.negate().multiset()


def _canonical(w: tuple[int, ...]) -> tuple[int, ...]:
    for v in w:
        if v:
            return w if v > 0 else tuple(-x for x in w)
    return w


def lagrangian_choices(u_weights: WeightData) -> list[WeightData]:
    """All torus Lagrangians W' of U = V + V*, up to weight multiset.

    Every pair {l, -l} of U contributes one of its two weights; zero weights
    are split evenly.  Each result W' satisfies U ~ W' + W'^*.
    """
    if not is_orthogonal(u_weights):
        raise RepError("U-weights are not symmetric under negation")
    counts = u_weights.multiset()
    zero = (0,) * u_weights.torus_rank
    nzero = counts.get(zero, 0)
    if nzero % 2:
        raise RepError("odd multiplicity of the zero weight")
    classes = sorted({_canonical(w) for w in counts if any(w)})
    options = []
    for c in classes:
        k = counts[c]
        neg = tuple(-x for x in c)
        options.append([(c,) * j + (neg,) * (k - j) for j in range(k + 1)])
    out = []
    for combo in itertools.product(*options):
        ws = [zero] * (nzero // 2)
        for part in combo:
            ws += list(part)
        out.append(WeightData(u_weights.torus_rank, tuple(ws)))
    return out


# --------------------------------------------------------------------------
# invariant checks


def check_bracket_closure(a: RepAction) -> bool:
    """[A_i, A_j] lies in the span of the Lie basis for all i, j."""
    if a.dim == 0:
        return True
    flat = [[v for row in m.tolist() for v in row] for m in a.lie_basis]
    cols = [list(c) for c in zip(*flat)]
    for x, y in itertools.combinations(a.lie_basis, 2):
        br = (x.dot(y) - y.dot(x)).tolist()
        target = [v for row in br for v in row]
        if linalg.solve(cols, target) is None:
            return False
    return True


def check_weight_diagonal(a: RepAction) -> bool:
    """Each torus generator is diagonal with the declared weights."""
    for k, idx in enumerate(a.torus_indices):
        m = a.lie_basis[idx]
        for i in range(a.dim):
            for j in range(a.dim):
                expected = a.weight_data.weights[i][k] if i == j else 0
                if m[i, j] != expected:
                    return False
    return True

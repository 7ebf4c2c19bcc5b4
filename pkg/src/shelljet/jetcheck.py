"""Shell-level computations: dimension, rank strata, jet inequalities, E-filtration."""

from __future__ import annotations

import time
from collections.abc import Sequence
from dataclasses import dataclass, field

from gmpy2 import mpq

from .algebra import linalg
from .algebra.groebner import GroebnerBudget
from .algebra.ideal import Ideal, jacobian_minors_ideal
from .criteria import FAILS, HOLDS, UNKNOWN, SliceQuantities, Verdict, condition_useEm
from .shell import ShellSystem, jet_generators

__all__ = [
    "FiltrationResult",
    "MustataResult",
    "ShellReport",
    "shell_dim_and_CI",
    "singular_stratum_dims",
    "singular_locus_generators",
    "shell_1_modular",
    "shell_1_modular_jet",
    "mustata_level",
    "fiber_over_origin_dim",
    "e_filtration",
    "xi_system_dimension",
    "codim_criterion",
    "irrelevance_verdict",
    "shell_report",
]


def shell_dim_and_CI(s: ShellSystem, budget: GroebnerBudget | None = None) -> tuple[int, bool]:
    """dim N and whether it equals 2 dim V - dim G."""
    d = s.ideal().dimension(budget=budget)
    return d, d == 2 * s.dim_v - s.dim_g


def _rank_locus(s: ShellSystem, max_rank: int) -> Ideal:
    """Shell ideal plus the (max_rank + 1)-minors of d mu: points where rank d mu <= max_rank."""
    gens = list(s.mu_generators)
    if max_rank + 1 > min(s.dim_g, 2 * s.dim_v):
        return s.ideal()
    if max_rank < 0:
        return Ideal(s.ring, [s.ring.one()])
    return jacobian_minors_ideal(gens, size=max_rank + 1, include_generators=True)


def singular_locus_generators(s: ShellSystem) -> list:
    """Shell generators plus the dim G minors of d mu (the non-maximal-rank locus)."""
    return list(_rank_locus(s, s.dim_g - 1).generators)


def singular_stratum_dims(s: ShellSystem, budget: GroebnerBudget | None = None) -> dict[int, int]:
    """r -> dim of {z in N : rank d mu_z <= dim G - r} for r = 1..dim G (-1 when empty)."""
    return {r: _rank_locus(s, s.dim_g - r).dimension(budget=budget) for r in range(1, s.dim_g + 1)}


def shell_1_modular(
    s: ShellSystem, budget: GroebnerBudget | None = None, dim_n: int | None = None, strata=None
) -> bool:
    """dim N - dim N_(r) >= r + 1 for every nonempty stratum, r >= 1."""
    if dim_n is None:
        dim_n = s.ideal().dimension(budget=budget)
    strata = strata if strata is not None else singular_stratum_dims(s, budget)
    return all(dim_n - d >= r + 1 for r, d in strata.items() if d >= 0)


@dataclass(frozen=True)
class MustataResult:
    level: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs


def mustata_level(
    s: ShellSystem, m: int, budget: GroebnerBudget | None = None, dim_n: int | None = None
) -> MustataResult:
    """dim rho_m^{-1}(N_sing) against (m+1) dim N."""
    if m < 1:
        raise ValueError("jet level must be >= 1")
    if dim_n is None:
        dim_n = s.ideal().dimension(budget=budget)
    jet = jet_generators(s, m)
    sing = [jet.lift(f) for f in singular_locus_generators(s)]
    lhs = Ideal(jet.ring, list(jet.generators) + sing).dimension(budget=budget)
    return MustataResult(m, lhs, (m + 1) * dim_n)


def shell_1_modular_jet(s: ShellSystem, budget: GroebnerBudget | None = None, dim_n: int | None = None) -> bool:
    """Jet route to 1-modularity: the level-one Mustata inequality."""
    return mustata_level(s, 1, budget, dim_n).holds


def fiber_over_origin_dim(
    s: ShellSystem, m: int, method: str = "recursive", budget: GroebnerBudget | None = None
) -> int:
    """dim rho_m^{-1}(0).

    ``"direct"`` runs Groebner on the level-m jet ideal with the level-0
    coordinates set to zero; ``"recursive"`` uses 2 dim V for m = 1 and
    dim N_{m-2} + 2 dim V for m >= 2.
    """
    if m < 1:
        raise ValueError("jet level must be >= 1")
    if method == "direct":
        jet = jet_generators(s, m)
        zero = [jet.ring.var(v) for v in jet.level_vars(0)]
        return Ideal(jet.ring, list(jet.generators) + zero).dimension(budget=budget)
    if method != "recursive":
        raise ValueError(f"unknown method {method!r}")
    if m == 1:
        return 2 * s.dim_v
    lower = s.ideal() if m == 2 else jet_generators(s, m - 2).ideal()
    return lower.dimension(budget=budget) + 2 * s.dim_v


# --------------------------------------------------------------------------
# E-filtration


@dataclass(frozen=True)
class FiltrationResult:
    r: tuple[int, ...]
    lie_dims: tuple[int, ...]
    dim_y: int
    dim_y_direct: int

    @property
    def consistent(self) -> bool:
        return self.dim_y == self.dim_y_direct


def _apply(a, x):
    n = len(x)
    return [sum((a[r, c] * x[c] for c in range(n)), mpq(0)) for r in range(n)]


def e_filtration(s: ShellSystem, x_arc: Sequence[Sequence]) -> FiltrationResult:
    """E_0 = g x_0, E_{i+1} = g_i x_{i+1} + E_i with g_{i+1} = {A in g_i : A x_{i+1} in E_i}."""
    basis = s.action.lie_basis
    n = s.dim_v
    xs = [[mpq(v) for v in x] for x in x_arc]
    if not xs or any(len(x) != n for x in xs):
        raise ValueError(f"need m+1 >= 1 points of dimension {n}")
    d = len(basis)
    # g_i as a list of coefficient vectors in the Lie basis
    span = [_apply(a, xs[0]) for a in basis]  # columns A_k x_0
    e_vectors = [v for v in span]
    r = [linalg.rank(e_vectors) if any(any(v) for v in e_vectors) else 0]
    cols = [list(c) for c in zip(*span)] if n else []
    g = linalg.nullspace(cols, d) if cols else [[mpq(int(i == j)) for j in range(d)] for i in range(d)]
    lie_dims = [len(g)]
    for x in xs[1:]:
        images = []
        for c in g:
            v = [mpq(0)] * n
            for k, ck in enumerate(c):
                if ck:
                    w = _apply(basis[k], x)
                    v = [a + ck * b for a, b in zip(v, w)]
            images.append(v)
        # g_{i+1}: combinations t of g whose image lies in E_i
        e_basis = [v for v in e_vectors if any(v)]
        if e_basis:
            e_red, _ = linalg.rref(e_basis)
        else:
            e_red = []
        if g:
            # t . images - s . e_red = 0  -> kernel in (t, s)
            mat_cols = images + [[-v for v in row] for row in e_red]
            rows = [list(rw) for rw in zip(*mat_cols)]
            kern = linalg.nullspace(rows, len(mat_cols))
            coeffs = [k[: len(g)] for k in kern]
            coeffs = linalg.rref(coeffs)[0] if coeffs else []
            new_g = []
            for t in coeffs:
                vec = [sum((ti * c[j] for ti, c in zip(t, g)), mpq(0)) for j in range(d)]
                new_g.append(vec)
        else:
            new_g = []
        e_vectors = e_basis + images
        r.append(linalg.rank(e_vectors) if any(any(v) for v in e_vectors) else 0)
        g = new_g
        lie_dims.append(len(g))
    m = len(xs) - 1
    dim_y = (m + 1) * n - sum(r)
    return FiltrationResult(tuple(r), tuple(lie_dims), dim_y, xi_system_dimension(s, xs))


def xi_system_dimension(s: ShellSystem, x_arc: Sequence[Sequence]) -> int:
    """Solution dimension of the jet equations, linear in xi once x is fixed."""
    basis = s.action.lie_basis
    n = s.dim_v
    xs = [[mpq(v) for v in x] for x in x_arc]
    m = len(xs) - 1
    rows = []
    for k in range(m + 1):
        for a in basis:
            row = [mpq(0)] * ((m + 1) * n)
            for i in range(k + 1):
                ax = _apply(a, xs[k - i])
                for c in range(n):
                    row[i * n + c] += ax[c]
            rows.append(row)
    return (m + 1) * n - linalg.rank(rows)


# --------------------------------------------------------------------------
# arithmetic verdicts


CITE_CODIM = "codimension route: codim X > (m+1) dim G - sum r_i for every stratum"
CITE_CIFR = "CIFR: every positive-dimensional slice satisfies one of the use-E_m conditions"


def codim_criterion(strata: Sequence[tuple[int, Sequence[int]]], dim_g: int, m: int) -> Verdict:
    rows = []
    ok = True
    for codim, rvec in strata:
        rvec = list(rvec)
        if len(rvec) != m + 1:
            raise ValueError(f"r-vector {rvec} needs length {m + 1}")
        if any(r < 0 or r > dim_g for r in rvec):
            raise ValueError(f"r-vector entries must lie in [0, {dim_g}]")
        bound = (m + 1) * dim_g - sum(rvec)
        rows.append({"codim": codim, "r": rvec, "bound": bound, "holds": codim > bound})
        ok = ok and codim > bound
    return Verdict("codim_criterion", CITE_CODIM, HOLDS if ok else FAILS, {"strata": rows, "dim_g": dim_g, "m": m})


def irrelevance_verdict(
    slices: Sequence[SliceQuantities],
    extra: dict[str, Verdict] | None = None,
) -> Verdict:
    """Assemble the CIFR verdict from per-slice checks.

    A slice is certified by the torus/FPIG branch, the m0 inequality, the
    null-cone dimension pair, or a supplied verdict in ``extra`` (keyed by
    slice label, for instance a codimension-route check).
    """
    extra = extra or {}
    routes = {}
    statuses = []
    for q in slices:
        if q.dim_h == 0:
            routes[q.label] = "finite isotropy"
            statuses.append(HOLDS)
            continue
        v = condition_useEm(q)
        if v.holds:
            routes[q.label] = "torus with FPIG W0" if v.witnesses.get("branch") == "torus" else "m0 inequality"
            statuses.append(HOLDS)
            continue
        pair = None
        if q.dim_null_n0 is not None and q.dim_null_n0_sg is not None:
            pair = q.dim_null_n0_sg < q.dim_s0 - 2 * q.dim_h and q.dim_null_n0 < q.dim_s0 - q.dim_h
        if pair:
            routes[q.label] = "null-cone dimensions"
            statuses.append(HOLDS)
            continue
        ex = extra.get(q.label)
        if ex is not None and ex.holds:
            routes[q.label] = ex.name
            statuses.append(HOLDS)
            continue
        unknown = v.status == UNKNOWN or pair is None or (ex is not None and ex.status == UNKNOWN)
        routes[q.label] = "unknown" if unknown else "none"
        statuses.append(UNKNOWN if unknown else FAILS)
    if all(st == HOLDS for st in statuses):
        status = HOLDS
    elif FAILS in statuses:
        status = FAILS
    else:
        status = UNKNOWN
    return Verdict("CIFR", CITE_CIFR, status, {"routes": routes})


# --------------------------------------------------------------------------
# report


@dataclass
class ShellReport:
    dim_n: int
    is_ci: bool
    expected_ci_dim: int
    stratum_dims: dict[int, int]
    one_modular: bool
    one_modular_jet: bool | None = None
    mustata_levels: dict[int, MustataResult] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "dim_n": self.dim_n,
            "is_ci": self.is_ci,
            "expected_ci_dim": self.expected_ci_dim,
            "stratum_dims": {str(k): v for k, v in sorted(self.stratum_dims.items())},
            "one_modular": self.one_modular,
            "one_modular_jet": self.one_modular_jet,
            "mustata": {
                str(m): {"lhs": r.lhs, "rhs": r.rhs, "holds": r.holds} for m, r in sorted(self.mustata_levels.items())
            },
        }
        if timings:
            out["timings"] = {k: round(v, 3) for k, v in sorted(self.timings.items())}
        return out


def shell_report(
    s: ShellSystem, levels: Sequence[int] = (1,), budget: GroebnerBudget | None = None
) -> ShellReport:
    t = {}
    t0 = time.perf_counter()
    dim_n, ci = shell_dim_and_CI(s, budget)
    t["shell"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    strata = singular_stratum_dims(s, budget)
    t["strata"] = time.perf_counter() - t0
    mus = {}
    for m in levels:
        t0 = time.perf_counter()
        mus[m] = mustata_level(s, m, budget, dim_n)
        t[f"mustata_{m}"] = time.perf_counter() - t0
    jet1 = mus[1].holds if 1 in mus else None
    return ShellReport(
        dim_n=dim_n,
        is_ci=ci,
        expected_ci_dim=2 * s.dim_v - s.dim_g,
        stratum_dims=strata,
        one_modular=shell_1_modular(s, budget, dim_n, strata),
        one_modular_jet=jet1,
        mustata_levels=mus,
        timings=t,
    )

"""Arithmetic evaluation of the slice conditions behind the CIFR verdicts.

Each check returns a :class:`Verdict` whose ``citation`` spells out the
inequality being tested and whose ``witnesses`` reproduce it exactly.
Unknown inputs give status ``"unknown"``; they are never coerced.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.groebner import GroebnerBudget
from .algebra.ideal import Ideal, jacobian_minors_ideal
from .repmodel import ModuleDescriptor, Summand, WeightData, build_action, is_orthogonal, torus_action
from .shell import moment_generators
from .torus.geometry import SliceDescriptor, chambers, has_fpig, m0

__all__ = [
    "HOLDS",
    "FAILS",
    "UNKNOWN",
    "SliceQuantities",
    "Verdict",
    "DeltaBounds",
    "property_F",
    "property_N",
    "delta_bounds",
    "condition_useEm",
    "condition_orthogonal",
    "adjoint_delta",
    "condition_star",
    "dimG_modular_shortcut",
    "torus_slice_quantities",
    "slice_null_cone_dims",
    "adjoint_sl2_slices",
]

HOLDS, FAILS, UNKNOWN = "holds", "fails", "unknown"


@dataclass(frozen=True)
class SliceQuantities:
    """Numerical data of one symplectic slice representation (S, H).

    ``dim_null_n0`` and ``dim_null_n0_sg`` are the dimensions of the null
    cone of the slice shell N0 and of its intersection with Sing(N0); None
    means not computed.
    """

    label: str
    dim_h: int
    h_is_torus: bool
    dim_u: int
    dim_w0: int
    dim_w0_t: int
    m0_w0: int | None = None
    dim_null_n0: int | None = None
    dim_null_n0_sg: int | None = None
    fpig_w0: bool | None = None
    w0_orthogonal: bool | None = None

    def __post_init__(self):
        for name in ("dim_h", "dim_u", "dim_w0", "dim_w0_t"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.dim_w0_t > self.dim_w0:
            raise ValueError("dim W0^T exceeds dim W0")
        if self.dim_u > self.dim_h:
            raise ValueError("dim U exceeds dim H")

    @property
    def dim_s0(self) -> int:
        return 2 * self.dim_w0

    @property
    def dim_h_mod_u(self) -> int:
        return self.dim_h - self.dim_u

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "dim_h": self.dim_h,
            "h_is_torus": self.h_is_torus,
            "dim_u": self.dim_u,
            "dim_w0": self.dim_w0,
            "dim_w0_t": self.dim_w0_t,
            "dim_s0": self.dim_s0,
            "m0_w0": self.m0_w0,
            "dim_null_n0": self.dim_null_n0,
            "dim_null_n0_sg": self.dim_null_n0_sg,
            "fpig_w0": self.fpig_w0,
            "w0_orthogonal": self.w0_orthogonal,
        }


@dataclass(frozen=True)
class Verdict:
    name: str
    citation: str
    status: str
    witnesses: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "citation": self.citation,
            "status": self.status,
            "witnesses": {k: _jsonable(v) for k, v in self.witnesses.items()},
            "notes": list(self.notes),
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, Verdict):
        return v.to_dict()
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def _status(b: bool) -> str:
    return HOLDS if b else FAILS


CITE_F = "property (F): dim N(N0) < dim S0 - dim H"
CITE_N = "property (N): dim N(N0)_sg <= dim S0 - dim H - 2"
CITE_DELTA = "delta = dim W0 - dim H - m0(W0); dim N(W0) <= dim W0 - delta - dim H/U"
CITE_USE_EM = "use-E_m: H0 a torus with W0 FPIG, or m0(W0) < dim W0 - dim H"
CITE_ORTH = "orthogonal slice condition: dim H < (dim W0 + dim W0^T)/2"
CITE_STAR = "condition (*): use-E_m on every slice; graded Gorenstein with symplectic singularities"
CITE_DIMG = "dim G-modular V has a shell with rational singularities"


def property_F(q: SliceQuantities) -> Verdict:
    """dim N(N0) < dim S0 - dim H, vacuous for finite H."""
    notes = ("'dim S0 - H' read as dim S0 - dim H",)
    if q.dim_h == 0:
        return Verdict("property_F", CITE_F, HOLDS, {"dim_h": 0}, notes + ("H finite",))
    if q.dim_null_n0 is None:
        return Verdict("property_F", CITE_F, UNKNOWN, {"dim_null_n0": None}, notes)
    bound = q.dim_s0 - q.dim_h
    return Verdict(
        "property_F",
        CITE_F,
        _status(q.dim_null_n0 < bound),
        {"dim_null_n0": q.dim_null_n0, "dim_s0": q.dim_s0, "dim_h": q.dim_h, "bound": bound},
        notes,
    )


def property_N(q: SliceQuantities) -> Verdict:
    if q.dim_h == 0:
        return Verdict("property_N", CITE_N, HOLDS, {"dim_h": 0}, ("H finite",))
    if q.dim_null_n0_sg is None:
        return Verdict("property_N", CITE_N, UNKNOWN, {"dim_null_n0_sg": None})
    bound = q.dim_s0 - q.dim_h - 2
    return Verdict(
        "property_N",
        CITE_N,
        _status(q.dim_null_n0_sg <= bound),
        {"dim_null_n0_sg": q.dim_null_n0_sg, "dim_s0": q.dim_s0, "dim_h": q.dim_h, "bound": bound},
    )


@dataclass(frozen=True)
class DeltaBounds:
    delta: int
    bound_null_w0: int
    bound_null_s0: int


def delta_bounds(q: SliceQuantities) -> DeltaBounds:
    """delta and the upper bounds on dim N(W0) and dim N(S0)."""
    if q.dim_h <= 0:
        raise ValueError("delta bounds need dim H > 0")
    if q.m0_w0 is None:
        raise ValueError("m0(W0) unknown")
    delta = q.dim_w0 - q.dim_h - q.m0_w0
    return DeltaBounds(
        delta=delta,
        bound_null_w0=q.dim_w0 - delta - q.dim_h_mod_u,
        bound_null_s0=q.dim_s0 - 2 * delta - q.dim_h - q.dim_h_mod_u,
    )


def condition_useEm(q: SliceQuantities) -> Verdict:
    if q.dim_h == 0:
        return Verdict("use_Em", CITE_USE_EM, HOLDS, {"dim_h": 0}, ("H finite: nothing to check",))
    torus_branch = None if q.fpig_w0 is None and q.h_is_torus else (q.h_is_torus and bool(q.fpig_w0))
    m0_branch = None if q.m0_w0 is None else q.m0_w0 < q.dim_w0 - q.dim_h
    wit = {
        "h_is_torus": q.h_is_torus,
        "fpig_w0": q.fpig_w0,
        "m0_w0": q.m0_w0,
        "dim_w0": q.dim_w0,
        "dim_h": q.dim_h,
        "torus_branch": torus_branch,
        "m0_branch": m0_branch,
    }
    if torus_branch or m0_branch:
        fired = "torus" if torus_branch else "m0"
        wit["branch"] = fired
        return Verdict("use_Em", CITE_USE_EM, HOLDS, wit)
    if torus_branch is None or m0_branch is None:
        return Verdict("use_Em", CITE_USE_EM, UNKNOWN, wit)
    return Verdict("use_Em", CITE_USE_EM, FAILS, wit)


def condition_orthogonal(q: SliceQuantities) -> Verdict:
    """dim H < (dim W0 + dim W0^T)/2, with the '-' form as a stricter extra."""
    if q.w0_orthogonal is False:
        raise ValueError("W0 is not orthogonal")
    main = 2 * q.dim_h < q.dim_w0 + q.dim_w0_t
    strict = 2 * q.dim_h < q.dim_w0 - q.dim_w0_t
    return Verdict(
        "orthogonal",
        CITE_ORTH,
        _status(main),
        {
            "dim_h": q.dim_h,
            "dim_w0": q.dim_w0,
            "dim_w0_t": q.dim_w0_t,
            "half_sum": Fraction(q.dim_w0 + q.dim_w0_t, 2),
            "minus_variant_holds": strict,
        },
        ("for orthogonal W0, m0(W0) = (dim W0 - dim W0^T)/2, so this implies the m0 branch of use-E_m",),
    )


def adjoint_delta(p: int, dim_u: int, ell: int, dim_m: int, dim_z: int) -> Fraction:
    """(p-2) dim u + (p-1) l + ((p-1)/2 dim m - dim Z) for slices of p copies of a Lie algebra."""
    if p < 2:
        raise ValueError("p must be >= 2")
    if min(dim_u, ell, dim_m, dim_z) < 0:
        raise ValueError("dimensions must be >= 0")
    if dim_m < 2 * dim_z:
        raise ValueError("need dim m >= 2 dim Z")
    return (p - 2) * dim_u + (p - 1) * ell + (Fraction(p - 1, 2) * dim_m - dim_z)


def condition_star(slices: Sequence[SliceQuantities]) -> Verdict:
    per = [condition_useEm(q) for q in slices]
    statuses = [v.status for v in per]
    if all(s == HOLDS for s in statuses):
        status = HOLDS
    elif FAILS in statuses:
        status = FAILS
    else:
        status = UNKNOWN
    wit = {"slices": {q.label: v for q, v in zip(slices, per)}}
    if status == HOLDS:
        wit["graded_gorenstein"] = True
        wit["symplectic_singularities"] = True
    return Verdict("condition_star", CITE_STAR, status, wit)


def dimG_modular_shortcut(max_k: int, dim_g: int) -> Verdict:
    ok = max_k >= dim_g
    return Verdict(
        "dimG_modular",
        CITE_DIMG,
        _status(ok),
        {"max_k": max_k, "dim_g": dim_g},
        ("rational singularities follow",) if ok else (),
    )


# --------------------------------------------------------------------------
# slice data


def slice_null_cone_dims(w0: WeightData, budget: GroebnerBudget | None = None) -> tuple[int, int]:
    """dim N(N0) and dim N(N0)_sg for a torus slice with weights ``w0``.

    N(S0) is the union of the coordinate spaces Z_lambda over chambers of the
    S0 weights; each is intersected with the shell N0, and with its
    rank-deficiency locus (the dim H minors of the moment map) for the
    singular part.
    """
    act = torus_action(w0.weights, w0.torus_rank)
    shell = moment_generators(act)
    ring = shell.ring
    coords = list(shell.x_vars) + list(shell.xi_vars)
    s0_weights = list(w0.weights) + [tuple(-v for v in a) for a in w0.weights]
    gens = list(shell.mu_generators)
    minors = jacobian_minors_ideal(gens, size=act.dim_g).generators
    best = best_sg = -1
    for _, pos in chambers(s0_weights):
        zero = [ring.var(coords[k]) for k in range(len(coords)) if k not in pos]
        best = max(best, Ideal(ring, gens + zero).dimension(budget=budget))
        best_sg = max(best_sg, Ideal(ring, gens + zero + list(minors)).dimension(budget=budget))
    return best, best_sg


def torus_slice_quantities(
    s: SliceDescriptor, label: str, null_cone: bool = True, budget: GroebnerBudget | None = None
) -> SliceQuantities:
    w0 = s.w0_weights
    if s.dim_h == 0:
        return SliceQuantities(label, 0, True, 0, w0.dim, 0, m0_w0=0, fpig_w0=True, w0_orthogonal=True)
    nc = sg = None
    if null_cone and w0.dim:
        nc, sg = slice_null_cone_dims(w0, budget)
    elif null_cone:
        nc = sg = 0
    return SliceQuantities(
        label=label,
        dim_h=s.dim_h,
        h_is_torus=True,
        dim_u=0,
        dim_w0=w0.dim,
        dim_w0_t=w0.dim_fixed,
        m0_w0=m0(w0),
        dim_null_n0=nc,
        dim_null_n0_sg=sg,
        fpig_w0=has_fpig(w0) if w0.dim else False,
        w0_orthogonal=is_orthogonal(w0),
    )


def adjoint_sl2_slices(p: int, null_cone: bool = True) -> list[SliceQuantities]:
    """Slices of p copies of sl2 at closed orbits with positive-dimensional isotropy.

    At a point with isotropy h the slice is W = p h + (p-1) g/h.  For H = T
    this leaves W0 = (p-1) copies of the nonzero adjoint weights; for H = SL2
    (the origin) W0 = p sl2.  Weights are read off the built adjoint action.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    adj = build_action("SL2", ModuleDescriptor((Summand(0, "adjoint"),))).weight_data
    w0_t = WeightData(1, adj.nonzero * (p - 1))
    nc = sg = None
    if null_cone:
        nc, sg = slice_null_cone_dims(w0_t)
    torus = SliceQuantities(
        label="H=T",
        dim_h=1,
        h_is_torus=True,
        dim_u=0,
        dim_w0=w0_t.dim,
        dim_w0_t=0,
        m0_w0=m0(w0_t),
        dim_null_n0=nc,
        dim_null_n0_sg=sg,
        fpig_w0=has_fpig(w0_t),
        w0_orthogonal=True,
    )
    w0_g = WeightData(1, adj.weights * p)
    full = SliceQuantities(
        label="H=SL2",
        dim_h=3,
        h_is_torus=False,
        dim_u=1,
        dim_w0=w0_g.dim,
        dim_w0_t=w0_g.dim_fixed,
        m0_w0=m0(w0_g),
        fpig_w0=None,
        w0_orthogonal=True,
    )
    return [torus, full]

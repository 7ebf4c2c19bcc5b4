"""Moment map, shell ideal and jet-scheme equations.

Coordinates on V + V* are ``x{j}_{i}`` and ``xi{j}_{i}`` where ``j`` is the
coordinate index (1-based) and ``i`` the jet level.  Variables are ordered
level-major and, within a level, the x-block precedes the xi-block.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .algebra.ideal import Ideal
from .algebra.polynomial import Polynomial, Ring
from .repmodel import RepAction

__all__ = [
    "ShellSystem",
    "JetSystem",
    "moment_generators",
    "jet_generators",
    "arc_substitution_check",
    "evaluate_jet_generators",
    "vector_field_derivative",
    "export_polynomials",
    "level_names",
]


def level_names(n: int, level: int) -> tuple[list[str], list[str]]:
    return [f"x{j + 1}_{level}" for j in range(n)], [f"xi{j + 1}_{level}" for j in range(n)]


def _jet_ring(n: int, m: int, order: str = "grevlex") -> Ring:
    names = []
    for i in range(m + 1):
        xs, xis = level_names(n, i)
        names += xs + xis
    return Ring(names, order)


def _pairing_poly(ring: Ring, a, xi_names, x_names) -> Polynomial:
    """xi^T A x as a polynomial in ``ring``."""
    terms = {}
    idx = ring._index
    nv = ring.nvars
    n = len(x_names)
    for r in range(n):
        for c in range(n):
            coeff = a[r, c]
            if coeff:
                e = [0] * nv
                e[idx[xi_names[r]]] += 1
                e[idx[x_names[c]]] += 1
                e = tuple(e)
                terms[e] = terms.get(e, mpq(0)) + mpq(coeff)
    return Polynomial(ring, {e: c for e, c in terms.items() if c})


@dataclass(frozen=True)
class ShellSystem:
    """The moment map of ``action`` on V + V* and its zero-fibre ideal."""

    action: RepAction
    ring: Ring
    x_vars: tuple[str, ...]
    xi_vars: tuple[str, ...]
    mu_generators: tuple[Polynomial, ...]
    symplectic_pairing: tuple[tuple[int, ...], ...]

    @property
    def dim_v(self) -> int:
        return self.action.dim

    @property
    def dim_g(self) -> int:
        return self.action.dim_g

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.mu_generators)

    def omega(self, z1: Sequence, z2: Sequence):
        """omega((v, v*), (w, w*)) = w*(v) - v*(w)."""
        om = self.symplectic_pairing
        return sum(
            (mpq(z1[i]) * om[i][j] * mpq(z2[j]) for i in range(len(z1)) for j in range(len(z2)) if om[i][j]),
            mpq(0),
        )

    def hamiltonian_vector(self, i: int, z: Sequence) -> list[mpq]:
        """Vector field of the i-th Lie basis element at z = (v, v*): (Av, -A^T v*)."""
        a = self.action.lie_basis[i]
        n = self.dim_v
        v, w = [mpq(t) for t in z[:n]], [mpq(t) for t in z[n:]]
        av = [sum((a[r, c] * v[c] for c in range(n)), mpq(0)) for r in range(n)]
        atw = [-sum((a[r, c] * w[r] for r in range(n)), mpq(0)) for c in range(n)]
        return av + atw

    def check_hamiltonian(self, z: Sequence) -> bool:
        """mu_i(z) = 1/2 omega(X_i z, z) for every generator, at the point z."""
        point = dict(zip(self.x_vars + self.xi_vars, (mpq(t) for t in z)))
        for i, g in enumerate(self.mu_generators):
            if 2 * g.evaluate(point) != self.omega(self.hamiltonian_vector(i, z), z):
                return False
        return True


@dataclass(frozen=True)
class JetSystem:
    """Level-``m`` jet equations of the shell.

    ``level_generators[k]`` holds the dim G polynomials
    ``sum_{i+j=k} xi_i^T A x_j`` in ``ring``; ``generators`` concatenates them.
    """

    base: ShellSystem
    level: int
    ring: Ring
    x_vars: tuple[tuple[str, ...], ...]
    xi_vars: tuple[tuple[str, ...], ...]
    level_generators: tuple[tuple[Polynomial, ...], ...]

    @property
    def generators(self) -> tuple[Polynomial, ...]:
        return tuple(g for lvl in self.level_generators for g in lvl)

    def ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators)

    def level_vars(self, i: int) -> tuple[str, ...]:
        return self.x_vars[i] + self.xi_vars[i]

    def lift(self, f: Polynomial) -> Polynomial:
        """A polynomial on the base shell ring viewed in level-0 variables."""
        return f.to_ring(self.ring)

    def project(self, point: Sequence) -> list:
        """rho_m: keep the level-0 coordinates of a jet point."""
        return list(point[: 2 * self.base.dim_v])


def moment_generators(action: RepAction, order: str = "grevlex") -> ShellSystem:
    n = action.dim
    ring = _jet_ring(n, 0, order)
    xs, xis = level_names(n, 0)
    gens = tuple(_pairing_poly(ring, a, xis, xs) for a in action.lie_basis)
    om = [[0] * (2 * n) for _ in range(2 * n)]
    for k in range(n):
        om[k][n + k] = 1
        om[n + k][k] = -1
    return ShellSystem(
        action=action,
        ring=ring,
        x_vars=tuple(xs),
        xi_vars=tuple(xis),
        mu_generators=gens,
        symplectic_pairing=tuple(tuple(r) for r in om),
    )


def jet_generators(s: ShellSystem, m: int) -> JetSystem:
    if m < 0:
        raise ValueError("jet level must be >= 0")
    n = s.dim_v
    ring = _jet_ring(n, m, s.ring.order)
    names = [level_names(n, i) for i in range(m + 1)]
    levels = []
    for k in range(m + 1):
        gens = []
        for a in s.action.lie_basis:
            total = ring.zero()
            for i in range(k + 1):
                total = total + _pairing_poly(ring, a, names[i][1], names[k - i][0])
            gens.append(total)
        levels.append(tuple(gens))
    return JetSystem(
        base=s,
        level=m,
        ring=ring,
        x_vars=tuple(tuple(nm[0]) for nm in names),
        xi_vars=tuple(tuple(nm[1]) for nm in names),
        level_generators=tuple(levels),
    )


def _split_arc(s: ShellSystem, m: int, arc: Sequence):
    n = s.dim_v
    if len(arc) != (m + 1) * 2 * n:
        raise ValueError(f"arc needs {(m + 1) * 2 * n} coordinates, got {len(arc)}")
    xs = [[mpq(arc[i * 2 * n + j]) for j in range(n)] for i in range(m + 1)]
    xis = [[mpq(arc[i * 2 * n + n + j]) for j in range(n)] for i in range(m + 1)]
    return xs, xis


def arc_substitution_check(s: ShellSystem, m: int, arc: Sequence) -> bool:
    """mu(x(t), xi(t)) = 0 mod t^{m+1} for the truncated arc.

    ``arc`` lists the coordinates level by level in the jet ring's variable
    order.  Computed by truncated power-series multiplication, independently
    of :func:`jet_generators`.
    """
    n = s.dim_v
    xs, xis = _split_arc(s, m, arc)
    for a in s.action.lie_basis:
        # (A x)(t) coefficients
        ax = [[sum((a[r, c] * xs[i][c] for c in range(n)), mpq(0)) for r in range(n)] for i in range(m + 1)]
        for k in range(m + 1):
            val = sum((xis[i][r] * ax[k - i][r] for i in range(k + 1) for r in range(n)), mpq(0))
            if val:
                return False
    return True


def evaluate_jet_generators(j: JetSystem, arc: Sequence) -> list[mpq]:
    point = dict(zip(j.ring.names, (mpq(Fraction(v)) if isinstance(v, float) else mpq(v) for v in arc)))
    return [g.evaluate(point) for g in j.generators]


def vector_field_derivative(s: ShellSystem, i: int, f: Polynomial) -> Polynomial:
    """Derivative of f along the vector field (Ax, -A^T xi) induced by the i-th basis element."""
    a = s.action.lie_basis[i]
    n = s.dim_v
    ring = s.ring
    x = [ring.var(v) for v in s.x_vars]
    xi = [ring.var(v) for v in s.xi_vars]
    out = ring.zero()
    for c in range(n):
        comp = ring.zero()
        for k in range(n):
            if a[c, k]:
                comp = comp + x[k] * ring.constant(a[c, k])
        if comp:
            out = out + comp * f.derivative(s.x_vars[c])
    for r in range(n):
        comp = ring.zero()
        for k in range(n):
            if a[k, r]:
                comp = comp - xi[k] * ring.constant(a[k, r])
        if comp:
            out = out + comp * f.derivative(s.xi_vars[r])
    return out


def export_polynomials(gens: Sequence[Polynomial]) -> str:
    """One generator per line, explicit monomials, ``*`` and ``^`` syntax."""
    if not gens:
        return ""
    ring = gens[0].ring
    header = "# variables: " + ", ".join(ring.names)
    return "\n".join([header, *(g.to_str() for g in gens)]) + "\n"

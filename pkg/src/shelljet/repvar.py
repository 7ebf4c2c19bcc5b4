"""Numerical probe of Hom(pi, G) for surface groups.

The relator word map is Phi(g_1, h_1, ..., g_p, h_p) = [g_1, h_1] ... [g_p, h_p]
on G^{2p}.  Tangent vectors are left-trivialised: the k-th group entry is
perturbed as g_k (1 + eps X) with X in the Lie algebra, and the differential
is reported as Phi^{-1} dPhi in Lie-algebra coordinates.

Hot loops (word products and the product-rule Jacobian) are compiled with
numba when available; ``SHELLJET_DISABLE_NUMBA=1`` runs the same code as
plain numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import jit

__all__ = [
    "GROUPS",
    "WordMap",
    "LocalDimension",
    "TangentConeModel",
    "SampleError",
    "lie_basis",
    "evaluate_word_map",
    "jacobian_product_rule",
    "jacobian_finite_difference",
    "sample_solution",
    "local_dimension",
    "centralizer_dim",
    "tangent_cone_model",
    "random_group_element",
]

GROUPS = ("sl2", "so3")
DEFAULT_SEED = 20240611
RANK_REL_TOL = 1e-6
GAP_LOW, GAP_HIGH = 1e-8, 1e-4


class SampleError(RuntimeError):
    """Gauss-Newton did not reach the tolerance within the retry budget."""


def lie_basis(group: str) -> np.ndarray:
    """Complex basis of the Lie algebra in its defining matrices, shape (3, n, n)."""
    if group == "sl2":
        return np.array(
            [[[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]],
            dtype=np.complex128,
        )
    if group == "so3":
        b = np.zeros((3, 3, 3), dtype=np.complex128)
        for k, (i, j) in enumerate([(1, 2), (2, 0), (0, 1)]):
            b[k, i, j] = -1
            b[k, j, i] = 1
        return b
    raise ValueError(f"unsupported group {group!r}; choose from {GROUPS}")


@dataclass(frozen=True)
class WordMap:
    genus: int
    group: str = "sl2"

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")
        if self.group not in GROUPS:
            raise ValueError(f"unsupported group {self.group!r}")

    @property
    def n(self) -> int:
        return 2 if self.group == "sl2" else 3

    @property
    def dim_g(self) -> int:
        return 3

    @property
    def n_entries(self) -> int:
        return 2 * self.genus

    @property
    def expected_dim(self) -> int:
        return (2 * self.genus - 1) * self.dim_g


# --------------------------------------------------------------------------
# kernels


@jit
def _word_letters(point, inverses):
    """Letters g_1, h_1, g_1^-1, h_1^-1, ... of the relator word, shape (4p, n, n)."""
    p = point.shape[0] // 2
    n = point.shape[1]
    out = np.empty((4 * p, n, n), dtype=np.complex128)
    for i in range(p):
        out[4 * i] = point[2 * i]
        out[4 * i + 1] = point[2 * i + 1]
        out[4 * i + 2] = inverses[2 * i]
        out[4 * i + 3] = inverses[2 * i + 1]
    return out


@jit
def _prefix_suffix(letters):
    L = letters.shape[0]
    n = letters.shape[1]
    pre = np.empty((L + 1, n, n), dtype=np.complex128)
    suf = np.empty((L + 1, n, n), dtype=np.complex128)
    eye = np.eye(n, dtype=np.complex128)
    pre[0] = eye
    for k in range(L):
        pre[k + 1] = pre[k] @ letters[k]
    suf[L] = eye
    for k in range(L - 1, -1, -1):
        suf[k] = letters[k] @ suf[k + 1]
    return pre, suf


@jit
def _jacobian_kernel(point, inverses, basis, phi_inv):
    """Columns Phi^{-1} dPhi for X_a at entry k, as matrices, shape (2p, dimg, n, n).

    Entry k occurs twice in the word: as g_k (derivative g_k X) and as
    g_k^{-1} (derivative -X g_k^{-1}).
    """
    letters = _word_letters(point, inverses)
    pre, suf = _prefix_suffix(letters)
    p = point.shape[0] // 2
    d = basis.shape[0]
    n = point.shape[1]
    out = np.empty((2 * p, d, n, n), dtype=np.complex128)
    for i in range(p):
        for s in range(2):
            k = 2 * i + s
            pos = 4 * i + s  # the letter g_k
            neg = 4 * i + 2 + s  # the letter g_k^{-1}
            for a in range(d):
                x = basis[a]
                term = pre[pos] @ (letters[pos] @ x) @ suf[pos + 1]
                term = term - pre[neg] @ (x @ letters[neg]) @ suf[neg + 1]
                out[k, a] = phi_inv @ term
    return out


@jit
def _word_product(point, inverses):
    letters = _word_letters(point, inverses)
    n = point.shape[1]
    acc = np.eye(n, dtype=np.complex128)
    for k in range(letters.shape[0]):
        acc = acc @ letters[k]
    return acc


# --------------------------------------------------------------------------
# public API


def _as_point(wm: WordMap, point) -> np.ndarray:
    pt = np.ascontiguousarray(np.asarray(point, dtype=np.complex128))
    if pt.shape != (wm.n_entries, wm.n, wm.n):
        raise ValueError(f"point must have shape {(wm.n_entries, wm.n, wm.n)}, got {pt.shape}")
    return pt


def membership_residual(wm: WordMap, pt: np.ndarray) -> float:
    """Largest violation of det = 1 (and g^T g = 1 for so3)."""
    res = float(np.max(np.abs(np.linalg.det(pt) - 1)))
    if wm.group == "so3":
        eye = np.eye(3)
        res = max(res, float(max(np.linalg.norm(g.T @ g - eye) for g in pt)))
    return res


def _coords(wm: WordMap, m: np.ndarray) -> np.ndarray:
    """Lie-algebra coordinates of a matrix (least squares onto the basis)."""
    if wm.group == "sl2":
        return np.array([(m[0, 0] - m[1, 1]) / 2, m[0, 1], m[1, 0]])
    return np.array([(m[2, 1] - m[1, 2]) / 2, (m[0, 2] - m[2, 0]) / 2, (m[1, 0] - m[0, 1]) / 2])


def evaluate_word_map(wm: WordMap, point, method: str = "product", tol: float = 1e-6):
    """Phi(point) and the left-trivialised Jacobian (dim G x 2p dim G)."""
    pt = _as_point(wm, point)
    if membership_residual(wm, pt) > tol:
        raise ValueError("point entries are not group elements within tolerance")
    inv = np.ascontiguousarray(np.linalg.inv(pt))
    phi = _word_product(pt, inv)
    if method == "product":
        jac = jacobian_product_rule(wm, pt, inv, phi)
    elif method == "fd":
        jac = jacobian_finite_difference(wm, pt)
    else:
        raise ValueError(f"unknown Jacobian method {method!r}")
    return phi, jac


def jacobian_product_rule(wm: WordMap, pt, inv=None, phi=None) -> np.ndarray:
    pt = _as_point(wm, pt)
    inv = np.ascontiguousarray(np.linalg.inv(pt)) if inv is None else inv
    phi = _word_product(pt, inv) if phi is None else phi
    basis = lie_basis(wm.group)
    cols = _jacobian_kernel(pt, inv, basis, np.ascontiguousarray(np.linalg.inv(phi)))
    jac = np.empty((wm.dim_g, wm.n_entries * wm.dim_g), dtype=np.complex128)
    for k in range(wm.n_entries):
        for a in range(wm.dim_g):
            jac[:, k * wm.dim_g + a] = _coords(wm, cols[k, a])
    return jac


def jacobian_finite_difference(wm: WordMap, pt, step: float = 1e-7) -> np.ndarray:
    """Central differences along g_k -> g_k (1 + t X_a)."""
    pt = _as_point(wm, pt)
    basis = lie_basis(wm.group)
    phi = _word_product(pt, np.linalg.inv(pt))
    phi_inv = np.linalg.inv(phi)
    jac = np.empty((wm.dim_g, wm.n_entries * wm.dim_g), dtype=np.complex128)
    eye = np.eye(wm.n)
    for k in range(wm.n_entries):
        for a in range(wm.dim_g):
            vals = []
            for t in (step, -step):
                q = pt.copy()
                q[k] = pt[k] @ (eye + t * basis[a])
                vals.append(_word_product(q, np.linalg.inv(q)))
            jac[:, k * wm.dim_g + a] = _coords(wm, phi_inv @ (vals[0] - vals[1]) / (2 * step))
    return jac


def random_group_element(wm: WordMap, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    basis = lie_basis(wm.group)
    if wm.group == "sl2":
        m = np.eye(2) + scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        d = np.linalg.det(m)
        return m / np.sqrt(d)
    x = sum(c * b for c, b in zip(scale * rng.normal(size=3), basis)).real
    # Rodrigues formula for a real rotation
    theta = np.sqrt(-np.trace(x @ x) / 2)
    if theta < 1e-12:
        return np.eye(3, dtype=np.complex128)
    return (np.eye(3) + np.sin(theta) / theta * x + (1 - np.cos(theta)) / theta**2 * (x @ x)).astype(np.complex128)


def _project(wm: WordMap, pt: np.ndarray) -> np.ndarray:
    out = np.empty_like(pt)
    for k, g in enumerate(pt):
        if wm.group == "sl2":
            out[k] = g / np.sqrt(np.linalg.det(g))
        else:
            # nearest complex-orthogonal matrix via g (g^T g)^{-1/2}, then fix det
            w, v = np.linalg.eig(g.T @ g)
            root = v @ np.diag(1 / np.sqrt(w)) @ np.linalg.inv(v)
            h = g @ root
            out[k] = h / np.linalg.det(h) ** (1 / 3)
    return out


def sample_solution(
    wm: WordMap,
    tol: float = 1e-10,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
    max_iter: int = 60,
    max_retries: int = 20,
    start=None,
) -> np.ndarray:
    """A point with ||Phi - e||_F < tol and membership residual < tol.

    Gauss-Newton with pseudo-inverse steps g_k <- g_k (1 + X_k) followed by
    determinant normalisation; fresh random starts on divergence.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    rng = rng if rng is not None else np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    basis = lie_basis(wm.group)
    eye = np.eye(wm.n)
    for attempt in range(max_retries):
        if start is not None and attempt == 0:
            pt = _project(wm, _as_point(wm, start))
        else:
            pt = np.array([random_group_element(wm, rng) for _ in range(wm.n_entries)])
        for _ in range(max_iter):
            inv = np.linalg.inv(pt)
            phi = _word_product(pt, inv)
            err = np.linalg.norm(phi - eye)
            if err < tol and membership_residual(wm, pt) < tol:
                return pt
            if not np.isfinite(err) or err > 1e8:
                break
            jac = jacobian_product_rule(wm, pt, inv, phi)
            r = _coords(wm, np.linalg.inv(phi) @ (phi - eye))
            step = -np.linalg.pinv(jac, rcond=1e-12) @ r
            new = pt.copy()
            for k in range(wm.n_entries):
                x = sum(step[k * wm.dim_g + a] * basis[a] for a in range(wm.dim_g))
                new[k] = pt[k] @ (eye + x + x @ x / 2)
            pt = _project(wm, new)
    raise SampleError(f"no solution within tolerance after {max_retries} starts")


def centralizer_dim(wm: WordMap, point, rel: float = RANK_REL_TOL) -> int:
    """Numerical dim of {X : g X g^-1 = X for all entries g}."""
    pt = _as_point(wm, point)
    basis = lie_basis(wm.group)
    rows = []
    for g in pt:
        gi = np.linalg.inv(g)
        ad = np.array([_coords(wm, g @ b @ gi) for b in basis]).T
        rows.append(ad - np.eye(wm.dim_g))
    s = np.linalg.svd(np.vstack(rows), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return wm.dim_g
    return wm.dim_g - int(np.sum(s > rel * max(s[0], 1.0)))


@dataclass(frozen=True)
class LocalDimension:
    rank: int | None
    dimension: int | None
    singular_values: tuple[float, ...]
    status: str  # "ok" | "singular" | "indeterminate"

    @property
    def singular_point(self) -> bool:
        return self.status == "singular"


def local_dimension(wm: WordMap, point, rel: float = RANK_REL_TOL) -> LocalDimension:
    """2p dim G - rank dPhi, with the numerical rank cut at ``rel`` times the top singular value.

    A singular value ratio inside (1e-8, 1e-4) makes the rank indeterminate.
    Rank below dim G marks a point where Phi is not submersive; the number
    returned there is the Zariski tangent dimension.
    """
    pt = _as_point(wm, point)
    _, jac = evaluate_word_map(wm, pt)
    s = np.linalg.svd(jac, compute_uv=False)
    total = wm.n_entries * wm.dim_g
    sv = tuple(float(v) for v in s)
    top = s[0] if s.size else 0.0
    if top == 0 or top < 1e-300:
        return LocalDimension(0, total, sv, "singular")
    ratios = s / top
    if np.any((ratios > GAP_LOW) & (ratios < GAP_HIGH)):
        return LocalDimension(None, None, sv, "indeterminate")
    rank = int(np.sum(ratios > rel))
    status = "ok" if rank == wm.dim_g else "singular"
    return LocalDimension(rank, total - rank, sv, status)


@dataclass(frozen=True)
class TangentConeModel:
    """N_y = shell(W) x g/h with W = p h + (p - 1) g/h."""

    genus: int
    dim_h: int
    dim_g: int

    @property
    def dim_w(self) -> int:
        return self.genus * self.dim_h + (self.genus - 1) * (self.dim_g - self.dim_h)

    @property
    def trivial_factor_dim(self) -> int:
        return self.dim_g - self.dim_h

    @property
    def model_dim(self) -> int:
        """dim N_y when the shell of W has the expected dimension 2 dim W - dim H."""
        return 2 * self.dim_w - self.dim_h + self.trivial_factor_dim

    def shell_spec(self) -> dict | None:
        """Module description of W for the built-in cases (SL2 with H = SL2, a torus, or trivial)."""
        p = self.genus
        if self.dim_g != 3:
            return None
        if self.dim_h == 3:
            return {"group": ["SL2"], "module": [{"factor": 0, "tag": "adjoint", "multiplicity": p}]}
        if self.dim_h == 1:
            weights = [[0]] * p + [[2], [-2]] * (p - 1)
            return {"group": ["T1"], "module": [{"factor": 0, "tag": "weights", "weights": weights}]}
        return None


def tangent_cone_model(genus: int, dim_h: int, dim_g: int = 3) -> TangentConeModel:
    if not 0 <= dim_h <= dim_g:
        raise ValueError("need 0 <= dim h <= dim g")
    if genus < 1:
        raise ValueError("genus must be >= 1")
    return TangentConeModel(genus, dim_h, dim_g)

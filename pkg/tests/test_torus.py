"""Torus weight geometry; scipy's LP serves as the independent oracle."""

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from shelljet.repmodel import WeightData, is_orthogonal
from shelljet.torus import (
    NotComputedError,
    chambers,
    has_fpig,
    is_stable,
    is_unstable,
    isotropy_subtori,
    m0,
    m0_orthogonal_formula,
    modularity_profile,
    null_cone_dim,
    torus_slice_reps,
)
from shelljet.torus.lp import fm_solve, simplex_solve_inequalities, strictly_positive_relation

W = WeightData.from_list


def weight_sets(max_rank=3, max_len=7):
    return st.integers(1, max_rank).flatmap(
        lambda r: st.lists(st.tuples(*[st.integers(-2, 2)] * r), min_size=1, max_size=max_len).map(
            lambda ws: WeightData(r, tuple(ws))
        )
    )


def lp_unstable(vectors):
    a = np.array(vectors, dtype=float)
    res = linprog(np.zeros(a.shape[1]), A_ub=-a, b_ub=-np.ones(len(a)), bounds=[(None, None)] * a.shape[1])
    return res.status == 0


def oracle_m0(w):
    best = 0
    idx = range(len(w.weights))
    for k in range(1, len(w.weights) + 1):
        for sub in itertools.combinations(idx, k):
            if k > best and lp_unstable([w.weights[i] for i in sub]):
                best = k
    return best


@pytest.mark.parametrize(
    "weights,support,unstable",
    [
        ([[1], [-1]], {0, 1}, False),
        ([[1], [1]], {0, 1}, True),
        ([[1, 0], [0, 1], [-1, -1]], {0, 1, 2}, False),
    ],
)
def test_is_unstable_examples(weights, support, unstable):
    w = W(weights)
    cert = is_unstable(w, support)
    assert (cert is not None) == unstable
    if cert:
        assert cert.verify(w, support)


@pytest.mark.parametrize(
    "weights,expected",
    [([[1], [1]], 2), ([[1], [1], [-1], [-1]], 2), ([[1, 0], [0, 1], [-1, -1]], 2)],
)
def test_m0_examples(weights, expected):
    assert m0(W(weights)) == expected


@pytest.mark.parametrize(
    "weights,expected",
    [([[1], [-1]], 1), ([[1, 0], [-1, 0], [2, 3], [-2, -3]], 2), ([[0], [0], [1], [-1]], 1)],
)
def test_orthogonal_formula_examples(weights, expected):
    w = W(weights)
    assert m0_orthogonal_formula(w) == expected == m0(w)


def test_orthogonal_formula_rejects_non_orthogonal():
    with pytest.raises(ValueError):
        m0_orthogonal_formula(W([[1], [1]]))


def test_modularity_examples():
    p = modularity_profile(W([[1], [1]]))
    assert p.entries[1] == 0 and p.max_k == 1
    assert modularity_profile(W([[1], [-1]])).entries == p.entries
    assert modularity_profile(W([[1], [-1], [-1], [1]])).max_k == 3


def test_stability_examples():
    assert is_stable(W([[1], [-1]])) and has_fpig(W([[1], [-1]]))
    assert not is_stable(W([[1], [1]]))
    assert is_stable(W([[0]])) and not has_fpig(W([[0]]))


def test_slice_examples():
    reps = torus_slice_reps(W([[1], [-1]]))
    dims = sorted(r.dim_h for r in reps)
    assert dims == [0, 1]
    origin = next(r for r in reps if r.dim_h == 1)
    assert sorted(origin.w0_weights.weights) == [(-1,), (1,)]
    sl2_torus = torus_slice_reps(W([[0], [0], [2], [-2]]))
    assert any(r.dim_h == 1 and sorted(r.w0_weights.weights) == [(-2,), (2,)] for r in sl2_torus)
    for r in sl2_torus:
        # the slice drops the orbit directions, of dimension rank T - dim H
        assert r.dim_w_fixed + r.dim_w0 == 4 - (1 - r.dim_h)


def test_isotropy_subtori_example():
    subs = isotropy_subtori(W([[1, 0], [0, 1], [-1, -1]]))
    assert sorted(len(h) for h in subs) == [0, 1, 1, 1, 2]
    lines = {h[0] for h in subs if len(h) == 1}
    assert lines == {(0, 1), (1, 0), (1, -1)}


@settings(max_examples=60, deadline=None)
@given(weight_sets())
def test_m0_matches_lp_oracle(w):
    assert m0(w) == oracle_m0(w)


@settings(max_examples=60, deadline=None)
@given(weight_sets())
def test_m0_negation_invariant(w):
    assert m0(w) == m0(w.negate())


@settings(max_examples=40, deadline=None)
@given(weight_sets(max_len=6), st.data())
def test_m0_monotone(w, data):
    extra = data.draw(st.tuples(*[st.integers(-2, 2)] * w.torus_rank))
    bigger = WeightData(w.torus_rank, w.weights + (extra,))
    assert m0(w) <= m0(bigger) <= m0(w) + 1


@settings(max_examples=60, deadline=None)
@given(weight_sets())
def test_chambers_certify_null_cone(w):
    chs = chambers(w.weights)
    for lam, pos in chs:
        assert all(sum(l * a for l, a in zip(lam, w.weights[i])) >= 1 for i in pos)
    best = max((len(pos) for _, pos in chs), default=0)
    assert best == m0(w) == null_cone_dim(w)


@settings(max_examples=40, deadline=None)
@given(weight_sets())
def test_orthogonal_double_matches_formula(w):
    u = w + w.negate()
    assert is_orthogonal(u)
    assert m0(u) == m0_orthogonal_formula(u)


def test_subset_cap():
    w = WeightData(1, tuple((k,) for k in range(1, 23)))
    with pytest.raises(NotComputedError):
        m0(w)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=6),
    st.lists(st.integers(-3, 3), min_size=6, max_size=6),
)
def test_fm_and_simplex_agree(a, b):
    b = b[: len(a)]
    y1, y2 = fm_solve(a, b), simplex_solve_inequalities(a, b)
    assert (y1 is None) == (y2 is None)
    for y in (y1, y2):
        if y is not None:
            assert all(sum(Fraction(int(c)) * v for c, v in zip(row, y)) >= bi for row, bi in zip(a, b))


def test_positive_relation():
    c = strictly_positive_relation([[1, 0], [0, 1], [-1, -1]])
    assert c is not None and all(v >= 1 for v in c)
    assert strictly_positive_relation([[1], [1]]) is None

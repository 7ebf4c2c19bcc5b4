from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shelljet.criteria import (
    FAILS,
    HOLDS,
    UNKNOWN,
    SliceQuantities,
    adjoint_delta,
    adjoint_sl2_slices,
    condition_orthogonal,
    condition_star,
    condition_useEm,
    delta_bounds,
    dimG_modular_shortcut,
    property_F,
    property_N,
    slice_null_cone_dims,
)
from shelljet.repmodel import WeightData
from shelljet.torus import modularity_profile


def q(**kw):
    base = dict(label="s", dim_h=1, h_is_torus=True, dim_u=0, dim_w0=2, dim_w0_t=0)
    base.update(kw)
    return SliceQuantities(**base)


FINITE = q(dim_h=0)


def test_property_F():
    assert property_F(FINITE).status == HOLDS
    assert property_F(q(dim_null_n0=3)).status == FAILS  # 3 < 4 - 1 fails at the boundary
    assert property_F(q(dim_null_n0=2)).status == HOLDS
    assert property_F(q()).status == UNKNOWN


def test_property_N():
    assert property_N(FINITE).status == HOLDS
    assert property_N(q(dim_null_n0_sg=0)).status == HOLDS
    assert property_N(q(dim_null_n0_sg=2)).status == FAILS
    assert property_N(q()).status == UNKNOWN


def test_sl2_torus_slice_null_cone():
    assert slice_null_cone_dims(WeightData.from_list([[2], [-2]])) == (2, 0)


def test_delta_bounds():
    d = delta_bounds(q(m0_w0=1))
    assert (d.delta, d.bound_null_w0) == (0, 1)
    d = delta_bounds(q(dim_w0=4, m0_w0=2))
    assert (d.delta, d.bound_null_w0) == (1, 2)
    assert d.bound_null_s0 == 8 - 2 - 1 - 1
    with pytest.raises(ValueError):
        delta_bounds(FINITE)


@settings(max_examples=100)
@given(st.integers(1, 6), st.integers(0, 12), st.integers(0, 12))
def test_delta_nonnegative_under_m0_branch(dim_h, dim_w0, m0_w0):
    if m0_w0 <= dim_w0 - dim_h:
        assert delta_bounds(q(dim_h=dim_h, dim_w0=dim_w0, m0_w0=m0_w0)).delta >= 0


def test_use_em_branches():
    v = condition_useEm(q(m0_w0=1, fpig_w0=True))
    assert v.status == HOLDS and v.witnesses["branch"] == "torus"
    assert v.witnesses["m0_branch"] is False
    v = condition_useEm(q(dim_w0=4, m0_w0=2, fpig_w0=False))
    assert v.status == HOLDS and v.witnesses["branch"] == "m0"
    assert condition_useEm(FINITE).status == HOLDS
    assert condition_useEm(q(m0_w0=1, fpig_w0=False)).status == FAILS
    assert condition_useEm(q()).status == UNKNOWN


def test_orthogonal_condition():
    # SO3 on 3 C^3 at the origin: dim H = 3 < 9/2
    so3 = q(dim_h=3, h_is_torus=False, dim_w0=9, w0_orthogonal=True)
    assert condition_orthogonal(so3).status == HOLDS
    assert condition_orthogonal(q(dim_h=1, dim_w0=2, w0_orthogonal=True)).status == FAILS
    trivial = q(dim_h=1, dim_w0=3, dim_w0_t=3, w0_orthogonal=True)
    assert condition_orthogonal(trivial).status == HOLDS
    assert condition_orthogonal(trivial).witnesses["minus_variant_holds"] is False
    with pytest.raises(ValueError):
        condition_orthogonal(q(w0_orthogonal=False))


@settings(max_examples=200)
@given(st.integers(1, 5), st.integers(0, 6), st.integers(0, 6))
def test_orthogonal_implies_use_em(dim_h, pairs, zeros):
    """For orthogonal W0, m0 = (dim W0 - dim W0^T)/2, so the orthogonal condition forces use-E_m."""
    dim_w0 = 2 * pairs + zeros
    s = q(dim_h=dim_h, h_is_torus=False, dim_w0=dim_w0, dim_w0_t=zeros, m0_w0=pairs, w0_orthogonal=True)
    assert condition_orthogonal(s).holds == condition_useEm(s).witnesses["m0_branch"]


def test_adjoint_delta():
    assert adjoint_delta(2, 0, 0, 2, 1) == 0
    assert adjoint_delta(3, 0, 0, 2, 1) == 1
    assert adjoint_delta(2, 1, 1, 0, 0) == 1
    assert isinstance(adjoint_delta(3, 0, 0, 3, 1), Fraction)
    with pytest.raises(ValueError):
        adjoint_delta(1, 0, 0, 2, 1)


def test_star():
    slices = adjoint_sl2_slices(2)
    v = condition_star(slices)
    assert v.status == HOLDS and v.witnesses["symplectic_singularities"]
    assert condition_star([]).status == HOLDS
    assert condition_star([q(m0_w0=1, fpig_w0=False)]).status == FAILS
    assert condition_star([q()]).status == UNKNOWN


def test_adjoint_slices_p2():
    torus, full = adjoint_sl2_slices(2)
    assert (torus.dim_null_n0, torus.dim_null_n0_sg) == (2, 0)
    assert delta_bounds(torus).delta == 0
    assert delta_bounds(full).delta == 1
    assert condition_useEm(full).witnesses["branch"] == "m0"


@pytest.mark.parametrize("weights", [[[1], [-1]], [[1], [1]], [[2], [-2]]])
def test_dimG_shortcut(weights):
    prof = modularity_profile(WeightData.from_list(weights))
    assert dimG_modular_shortcut(prof.max_k, 1).status == HOLDS


def test_slice_validation():
    with pytest.raises(ValueError):
        q(dim_u=2)
    with pytest.raises(ValueError):
        q(dim_w0_t=3)

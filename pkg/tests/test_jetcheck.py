import pytest

from conftest import ENTRY_IDS, random_x_arc
from shelljet.criteria import HOLDS, UNKNOWN, SliceQuantities, adjoint_sl2_slices
from shelljet.jetcheck import (
    codim_criterion,
    e_filtration,
    fiber_over_origin_dim,
    irrelevance_verdict,
    mustata_level,
    shell_1_modular,
    shell_1_modular_jet,
    shell_dim_and_CI,
    shell_report,
    singular_stratum_dims,
    xi_system_dimension,
)


@pytest.mark.parametrize("entry,expected", [("C1", (3, True)), ("C7", (4, False)), ("C5", (9, True))])
def test_shell_dim_and_ci(entry, expected, shells):
    assert shell_dim_and_CI(shells[entry]) == expected


@pytest.mark.parametrize("entry", ["C1", "C2"])
def test_strata_origin_only(entry, shells):
    assert singular_stratum_dims(shells[entry]) == {1: 0}


def test_adjoint_strata_are_1_modular(shells):
    s = shells["C6"]
    dim_n, _ = shell_dim_and_CI(s)
    strata = singular_stratum_dims(s)
    assert strata[1] <= dim_n - 2
    assert shell_1_modular(s, dim_n=dim_n, strata=strata)


@pytest.mark.parametrize("entry,expected", [("C1", True), ("C5", True), ("C8", False), ("C7", False)])
def test_one_modular_both_routes(entry, expected, shells):
    s = shells[entry]
    assert shell_1_modular(s) is expected
    assert shell_1_modular_jet(s) is expected


@pytest.mark.parametrize("m,lhs", [(1, 4), (2, 7)])
def test_mustata_c1(m, lhs, shells):
    r = mustata_level(shells["C1"], m)
    assert (r.lhs, r.rhs, r.holds) == (lhs, 3 * (m + 1), True)


def test_mustata_c8_fails(shells):
    assert not mustata_level(shells["C8"], 1).holds


@pytest.mark.parametrize("m,expected", [(1, 4), (2, 7), (3, 10)])
def test_fiber_over_origin(m, expected, shells):
    s = shells["C1"]
    assert fiber_over_origin_dim(s, m) == expected
    assert fiber_over_origin_dim(s, m, method="direct") == expected


def test_e_filtration_examples(shells):
    r = e_filtration(shells["C1"], [[1, 0], [0, 0]])
    assert r.r == (1, 1) and r.dim_y == 2 and r.consistent
    zero = e_filtration(shells["C4"], [[0] * 5] * 3)
    assert zero.r == (0, 0, 0) and zero.dim_y == 15
    generic = e_filtration(shells["C3"], [[1, 2, -1, 3, 0, 5]])
    assert generic.r == (3,) and generic.dim_y == 3


@pytest.mark.parametrize("entry", ENTRY_IDS)
def test_e_filtration_bounds_direct_count(entry, shells, rng):
    """On sparse arcs the filtration count can exceed the true xi-solution dimension, never undercut it."""
    s = shells[entry]
    for _ in range(30):
        arc = random_x_arc(rng, s.dim_v, 2, density=0.4)
        res = e_filtration(s, arc)
        assert res.dim_y_direct == xi_system_dimension(s, arc)
        assert res.dim_y_direct <= res.dim_y


def test_e_filtration_special_arc_gap(shells):
    """A sparse arc where the ideal-membership step overcounts by one."""
    res = e_filtration(shells["C4"], [[0] * 5, [0, -1, 0, 0, 0], [2, -2, 0, 0, -2], [0] * 5])
    assert (res.dim_y, res.dim_y_direct) == (14, 13)


def test_codim_criterion():
    assert codim_criterion([], 1, 1).status == HOLDS
    assert codim_criterion([(4, (1, 1))], 1, 1).status == HOLDS
    assert codim_criterion([(1, (0, 0))], 1, 1).status != HOLDS
    with pytest.raises(ValueError):
        codim_criterion([(1, (0,))], 1, 1)


def test_irrelevance():
    m0_slice = SliceQuantities("a", 1, True, 0, 4, 0, m0_w0=2, fpig_w0=False)
    v = irrelevance_verdict([m0_slice])
    assert v.status == HOLDS and v.witnesses["routes"]["a"] == "m0 inequality"
    unknown = SliceQuantities("b", 1, True, 0, 2, 0)
    assert irrelevance_verdict([m0_slice, unknown]).status == UNKNOWN
    assert irrelevance_verdict(adjoint_sl2_slices(2)).status == HOLDS


def test_shell_report(shells):
    rep = shell_report(shells["C1"], levels=(1, 2))
    d = rep.to_dict(timings=False)
    assert d["dim_n"] == 3 and "timings" not in d

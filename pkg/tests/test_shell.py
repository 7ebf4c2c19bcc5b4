"""Moment-map shells and jet equations."""

from fractions import Fraction

import pytest

from conftest import ENTRY_IDS, arc_on_jet_scheme, random_rational
from shelljet.algebra.polynomial import Ring
from shelljet.repmodel import torus_action
from shelljet.shell import (
    arc_substitution_check,
    evaluate_jet_generators,
    export_polynomials,
    jet_generators,
    level_names,
    moment_generators,
    vector_field_derivative,
)


def test_c1_generator():
    s = moment_generators(torus_action([[1], [-1]]))
    assert [g.to_str() for g in s.mu_generators] == ["x1_0*xi1_0 - x2_0*xi2_0"]


def test_level_names():
    assert level_names(2, 3) == (["x1_3", "x2_3"], ["xi1_3", "xi2_3"])


def test_jet_generators_c1_level1():
    s = moment_generators(torus_action([[1], [-1]]))
    j = jet_generators(s, 1)
    assert len(j.generators) == 2
    expected = j.ring.parse("xi1_0*x1_1 + x1_0*xi1_1 - xi2_0*x2_1 - x2_0*xi2_1")
    assert j.level_generators[1][0] == expected
    assert j.level_generators[0][0] == j.lift(s.mu_generators[0])


@pytest.mark.parametrize("entry", ENTRY_IDS)
def test_arc_substitution_agreement(entry, shells, rng):
    """100 arcs per entry: power-series substitution agrees with the jet generators."""
    s = shells[entry]
    m = 1
    j = jet_generators(s, m)
    for k in range(100):
        if k % 2 == 0:
            arc = arc_on_jet_scheme(s, m, rng)
        else:
            arc = [random_rational(rng) for _ in range((m + 1) * 2 * s.dim_v)]
        series = arc_substitution_check(s, m, arc)
        gens = all(v == 0 for v in evaluate_jet_generators(j, arc))
        assert series == gens
        if k % 2 == 0:
            assert series


@pytest.mark.parametrize("entry", ["C1", "C2", "C3", "C4", "C5", "C6"])
def test_shell_ideal_is_equivariant(entry, shells):
    s = shells[entry]
    ideal = s.ideal()
    for i in range(s.dim_g):
        for g in s.mu_generators:
            assert ideal.contains(vector_field_derivative(s, i, g))


@pytest.mark.parametrize("entry", ENTRY_IDS)
def test_moment_map_is_hamiltonian(entry, shells, rng):
    s = shells[entry]
    for _ in range(5):
        z = [random_rational(rng) for _ in range(2 * s.dim_v)]
        assert s.check_hamiltonian(z)


def test_export_round_trip(shells):
    s = shells["C4"]
    text = export_polynomials(list(s.mu_generators))
    header, *lines = text.strip().splitlines()
    names = header.removeprefix("# variables: ").split(", ")
    ring = Ring(names)
    assert [ring.parse(line) for line in lines] == list(s.mu_generators)


def test_arc_length_checked(shells):
    with pytest.raises(ValueError):
        arc_substitution_check(shells["C1"], 1, [Fraction(0)] * 3)

import numpy as np
import pytest

from shelljet.cli.specfile import parse_spec
from shelljet.jetcheck import shell_dim_and_CI
from shelljet.repvar import (
    SampleError,
    WordMap,
    centralizer_dim,
    evaluate_word_map,
    local_dimension,
    random_group_element,
    sample_solution,
    tangent_cone_model,
)
from shelljet.shell import moment_generators


@pytest.mark.parametrize("genus,expected", [(2, 9), (3, 15)])
def test_sampled_local_dimension(genus, expected):
    wm = WordMap(genus)
    rng = np.random.default_rng(5)
    for _ in range(3):
        pt = sample_solution(wm, rng=rng)
        ld = local_dimension(wm, pt)
        assert (ld.dimension, ld.status) == (expected, "ok")
        assert centralizer_dim(wm, pt) == 0


def test_identity_is_singular():
    wm = WordMap(2)
    ld = local_dimension(wm, np.array([np.eye(2)] * 4))
    assert ld.singular_point and ld.rank == 0 and ld.dimension == 12


def test_product_rule_matches_finite_differences():
    wm = WordMap(2)
    rng = np.random.default_rng(1)
    pt = np.array([random_group_element(wm, rng) for _ in range(4)])
    _, a = evaluate_word_map(wm, pt)
    _, b = evaluate_word_map(wm, pt, method="fd")
    assert np.abs(a - b).max() < 1e-5


def test_so3_probe():
    wm = WordMap(2, "so3")
    pt = sample_solution(wm, seed=2)
    assert local_dimension(wm, pt).dimension == 9


def test_rejects_non_group_points():
    wm = WordMap(2)
    with pytest.raises(ValueError):
        evaluate_word_map(wm, np.ones((4, 2, 2)))
    with pytest.raises(ValueError):
        WordMap(0)


def test_sampler_gives_up_honestly():
    with pytest.raises(SampleError):
        sample_solution(WordMap(2), max_iter=1, max_retries=2)


def test_seed_is_reproducible():
    a = sample_solution(WordMap(2), seed=9)
    b = sample_solution(WordMap(2), seed=9)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("dim_h", [1, 3])
def test_tangent_cone_model_dimension(dim_h):
    """The model shell has the expected dimension 2 dim W - dim H for p = 2."""
    model = tangent_cone_model(2, dim_h)
    spec = parse_spec(model.shell_spec(), "model")
    s = moment_generators(spec.action())
    assert s.dim_v == model.dim_w
    dim, ci = shell_dim_and_CI(s)
    assert ci and dim + model.trivial_factor_dim == model.model_dim

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from netdecomp.scenario import Scenario, build_weight_matrix, generate_scenario, path_loss_weight


def test_generate_shapes_and_bounds():
    s = generate_scenario(100, 50, 1000.0, seed=8)
    assert s.bs_positions.shape == (100, 2)
    assert s.user_positions.shape == (50, 2)
    for pts in (s.bs_positions, s.user_positions):
        assert pts.min() >= 0 and pts.max() <= 1000


@pytest.mark.parametrize("b, u, side", [(0, 5, 1000.0), (5, 0, 1000.0), (1, 1, 0.0)])
def test_generate_rejects_degenerate(b, u, side):
    with pytest.raises(ValueError):
        generate_scenario(b, u, side, seed=1)


def test_generate_is_deterministic():
    a = generate_scenario(7, 9, seed=123)
    b = generate_scenario(7, 9, seed=123)
    assert a.bs_positions.tobytes() == b.bs_positions.tobytes()
    assert a.user_positions.tobytes() == b.user_positions.tobytes()
    c = generate_scenario(7, 9, seed=124)
    assert not np.array_equal(a.bs_positions, c.bs_positions)


def test_draw_order_bs_then_users():
    s = generate_scenario(3, 2, 10.0, seed=5)
    rng = np.random.Generator(np.random.PCG64(5))
    flat = rng.uniform(0.0, 10.0, size=10)
    np.testing.assert_array_equal(s.bs_positions.ravel(), flat[:6])
    np.testing.assert_array_equal(s.user_positions.ravel(), flat[6:])


@pytest.mark.parametrize("dist, expected", [(0.5, 1.0), (1.0, 1.0), (10.0, 1e-4), (200.0, 200.0 ** -4), (250.0, 0.0)])
def test_path_loss_weight(dist, expected):
    assert path_loss_weight((0.0, 0.0), (0.0, dist), 4.0, 1.0, 200.0) == pytest.approx(expected, rel=1e-15)


def test_weight_matrix_single_pair():
    s = Scenario(np.array([[0.0, 0.0]]), np.array([[0.0, 10.0]]))
    np.testing.assert_allclose(build_weight_matrix(s), [[1e-4]], rtol=1e-15)


def test_weight_matrix_cutoff_and_shape():
    s = Scenario(np.array([[0.0, 0.0], [500.0, 500.0]]), np.array([[0.0, 300.0], [1.0, 1.0], [505.0, 500.0]]))
    w = build_weight_matrix(s)
    assert w.shape == (2, 3)
    assert np.all(w >= 0)
    assert w[0, 0] == 0.0 and w[1, 1] == 0.0


def test_weight_matrix_matches_scalar_formula():
    s = generate_scenario(6, 8, seed=3, dist_max=500.0)
    w = build_weight_matrix(s)
    for i, p in enumerate(s.bs_positions):
        for j, q in enumerate(s.user_positions):
            assert w[i, j] == pytest.approx(path_loss_weight(p, q, s.alpha, s.dist_min, s.dist_max), rel=1e-14)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**63), b=st.integers(1, 12), u=st.integers(2, 12), data=st.data())
def test_weight_invariants(seed, b, u, data):
    s = generate_scenario(b, u, 300.0, seed=seed)
    w = build_weight_matrix(s)
    assert np.all(np.isfinite(w))
    assert w.min() >= 0 and w.max() <= s.dist_min ** -s.alpha
    perm = np.array(data.draw(st.permutations(range(u))))
    swapped = Scenario(s.bs_positions, s.user_positions[perm], s.side_length)
    np.testing.assert_array_equal(build_weight_matrix(swapped), w[:, perm])
    assert build_weight_matrix(generate_scenario(b, u, 300.0, seed=seed)).tobytes() == w.tobytes()


def test_text_roundtrip():
    s = generate_scenario(4, 5, seed=11, alpha=3.5)
    back = Scenario.from_text(s.to_text())
    np.testing.assert_array_equal(back.bs_positions, s.bs_positions)
    np.testing.assert_array_equal(back.user_positions, s.user_positions)
    assert (back.alpha, back.seed, back.dist_max) == (3.5, 11, s.dist_max)
    assert s.to_text().splitlines()[5].startswith("bs,")

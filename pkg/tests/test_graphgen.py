import numpy as np
import pytest

from gcorr.graphgen import (
    JOINT_NORMAL_COV,
    Graph,
    Setting,
    erdos_renyi,
    sample_graph,
    sample_latent,
    sample_pair,
    spawn_seeds,
)
from gcorr.kernel import GAUSSIAN, LAPLACE


def test_linear_noise_free_is_identity():
    s = sample_latent(Setting.LINEAR, 200, 0.0, seed=3)
    np.testing.assert_array_equal(s.y, s.x)


def test_circle_noise_free_on_unit_circle():
    s = sample_latent("circle", 500, 0.0, seed=3)
    np.testing.assert_allclose(s.x**2 + s.y**2, 1.0, atol=1e-12)


def test_multimodal_independence_uncorrelated():
    s = sample_latent(Setting.MULTIMODAL_INDEPENDENCE, 5000, 0.0, seed=11)
    assert abs(np.corrcoef(s.x[:, 0], s.y[:, 0])[0, 1]) < 0.05


def test_joint_normal_covariance():
    s = sample_latent(Setting.JOINT_NORMAL, 5000, 0.0, seed=11)
    cov = np.cov(np.hstack([s.x, s.y]).T)
    assert np.max(np.abs(cov - JOINT_NORMAL_COV)) < 0.1


def test_noise_variance_matches_level():
    s = sample_latent(Setting.LINEAR, 20000, 0.1, seed=2)
    assert np.var(s.y - s.x) == pytest.approx(0.1, rel=0.05)


@pytest.mark.parametrize("setting", list(Setting))
def test_every_setting_is_deterministic(setting):
    a = sample_latent(setting, 50, 0.05, seed=123)
    b = sample_latent(setting, 50, 0.05, seed=123)
    assert a.x.shape == (50, 1) and a.y.shape == (50, 1)
    np.testing.assert_array_equal(a.x, b.x)
    np.testing.assert_array_equal(a.y, b.y)
    c = sample_latent(setting, 50, 0.05, seed=124)
    assert not np.array_equal(a.x, c.x)


def test_sample_latent_errors():
    with pytest.raises(ValueError):
        sample_latent("spiral", 10)
    with pytest.raises(ValueError):
        sample_latent(Setting.LINEAR, 1)
    with pytest.raises(ValueError):
        sample_latent(Setting.LINEAR, 10, noise_level=-0.1)


def test_sample_graph_certain_edges():
    k = np.ones((6, 6)) - np.eye(6)
    g = sample_graph(k, 1.0, seed=1)
    assert g.n_edges == 15


@pytest.mark.parametrize("rho", [0.2, 1.0])
def test_sample_graph_impossible_edges(rho):
    g = sample_graph(np.zeros((6, 6)), rho, seed=1)
    assert g.n_edges == 0


def test_sample_graph_density_concentrates():
    # 2 * 10^6 independent Bernoulli(0.5) edges: sd of density ~ 3.5e-4
    k = np.full((2000, 2000), 0.5)
    np.fill_diagonal(k, 0)
    g = sample_graph(k, 1.0, seed=4)
    assert abs(g.density() - 0.5) < 0.01


@pytest.mark.parametrize("rho", [0.0, -0.5, 1.5])
def test_sample_graph_rho_range(rho):
    with pytest.raises(ValueError):
        sample_graph(np.zeros((3, 3)), rho)


def test_sample_graph_invariants_and_determinism():
    s = sample_latent(Setting.EXPONENTIAL, 80, 0.0, seed=9)
    from gcorr.kernel import kernel_matrix

    k = kernel_matrix(GAUSSIAN, s.x)
    g = sample_graph(k, 0.7, seed=5)
    a = g.adjacency
    assert np.array_equal(a, a.T) and not np.any(np.diagonal(a))
    assert set(np.unique(a)) <= {0, 1}
    assert sample_graph(k, 0.7, seed=5) == g


def test_erdos_renyi_extremes():
    assert erdos_renyi(10, 0.0, seed=0).n_edges == 0
    assert erdos_renyi(10, 1.0, seed=0).n_edges == 45
    with pytest.raises(ValueError):
        erdos_renyi(10, 1.2)


def test_erdos_renyi_mean_density():
    densities = [erdos_renyi(80, 0.3, seed=s).density() for s in range(500)]
    assert abs(np.mean(densities) - 0.3) < 0.02


def test_graph_rejects_invalid_adjacency():
    with pytest.raises(ValueError):
        Graph(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        Graph(np.array([[1, 0], [0, 0]]))
    with pytest.raises(ValueError):
        Graph(np.array([[0, 2], [2, 0]]))


def test_substreams_are_independent():
    _, g1a, g2a = sample_pair(Setting.LINEAR, 60, GAUSSIAN, LAPLACE, seed=8)
    _, g1b, g2b = sample_pair(Setting.LINEAR, 60, GAUSSIAN, GAUSSIAN, seed=8)
    # changing the second kernel leaves the latent draw and first graph alone
    assert g1a == g1b
    assert g2a != g2b
    assert len(set(spawn_seeds(8, 3))) == 3

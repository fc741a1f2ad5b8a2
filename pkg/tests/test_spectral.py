import numpy as np
import pytest
from scipy import stats

from conftest import complete_graph, empty_graph
from gcorr import spectral
from gcorr.graphgen import Graph, erdos_renyi
from gcorr.spectral import (
    DimensionMethod,
    Spectrum,
    ase,
    dimension_cap,
    lse,
    normalized_laplacian,
    select_dimension,
    spectrum,
)


def profile_likelihood_oracle(values):
    """Exhaustive scan of the two-group Gaussian profile log-likelihood."""
    x = np.sort(np.abs(np.asarray(values, dtype=float)))[::-1]
    p = x.size
    best_q, best_ll = None, -np.inf
    for q in range(1, p):
        g1, g2 = x[:q], x[q:]
        ss = ((g1 - g1.mean()) ** 2).sum() + ((g2 - g2.mean()) ** 2).sum()
        sigma = np.sqrt(max(ss / p, 1e-300))
        ll = stats.norm.logpdf(g1, g1.mean(), sigma).sum() + stats.norm.logpdf(g2, g2.mean(), sigma).sum()
        if ll > best_ll + 1e-9:
            best_q, best_ll = q, ll
    return best_q


def test_complete_graph_rank_one():
    e = ase(complete_graph(4), 1)
    np.testing.assert_allclose(np.abs(e.rows[:, 0]), np.sqrt(3) / 2, atol=1e-12)
    assert np.all(np.sign(e.rows) == np.sign(e.rows[0, 0]))
    assert e.retained_eigenvalues[0] == pytest.approx(3.0)


@pytest.mark.parametrize("d", [1, 3])
def test_empty_graph_embeds_to_zero(d):
    assert np.all(ase(empty_graph(6), d).rows == 0)
    assert np.all(lse(empty_graph(6), d).rows == 0)


def test_full_dimension_reconstructs_adjacency(er_graph):
    n = er_graph.n
    e = ase(er_graph, n)
    signs = np.sign(e.retained_eigenvalues)
    recon = (e.rows * signs) @ e.rows.T
    a = er_graph.adjacency.astype(float)
    assert np.linalg.norm(recon - a) <= 1e-8 * n


def test_dimension_out_of_range(er_graph):
    with pytest.raises(ValueError):
        ase(er_graph, er_graph.n + 1)
    with pytest.raises(ValueError):
        ase(er_graph, 0)


def test_retained_eigenvalues_sorted_by_magnitude(er_graph):
    vals = ase(er_graph, 8).retained_eigenvalues
    assert np.all(np.diff(np.abs(vals)) <= 1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_gram_permutation_equivariance(seed):
    g = erdos_renyi(30, 0.4, seed=seed)
    p = np.random.default_rng(seed).permutation(g.n)
    gp = Graph(g.adjacency[np.ix_(p, p)])
    for d in (1, 3, 5):
        gram = ase(g, d).gram()
        np.testing.assert_allclose(ase(gp, d).gram(), gram[np.ix_(p, p)], atol=1e-8)


def test_iterative_solver_matches_dense(monkeypatch, er_graph):
    dense = ase(er_graph, 3).gram()
    monkeypatch.setattr(spectral, "DENSE_SOLVER_MAX_N", 10)
    iterative = ase(er_graph, 3).gram()
    np.testing.assert_allclose(iterative, dense, atol=1e-8)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_normalized_laplacian_complete(n):
    lap = normalized_laplacian(complete_graph(n))
    np.testing.assert_allclose(lap, (np.ones((n, n)) - np.eye(n)) / (n - 1), atol=1e-15)


def test_normalized_laplacian_isolated_node():
    a = np.zeros((4, 4))
    a[0, 1] = a[1, 0] = a[1, 2] = a[2, 1] = 1
    lap = normalized_laplacian(a)
    assert np.all(lap[3] == 0) and np.all(lap[:, 3] == 0)
    assert np.array_equal(lap, lap.T)


def test_normalized_laplacian_single_edge():
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_array_equal(normalized_laplacian(a), a)


def test_lse_complete_graph():
    n = 7
    rows = lse(complete_graph(n), 1).rows
    np.testing.assert_allclose(np.abs(rows), 1 / np.sqrt(n), atol=1e-12)


def test_lse_two_cliques_block_constant():
    m = 5
    block = np.ones((m, m)) - np.eye(m)
    a = np.zeros((2 * m, 2 * m), dtype=np.uint8)
    a[:m, :m] = block
    a[m:, m:] = block
    gram = lse(Graph(a), 2).gram()
    expected = np.zeros((2 * m, 2 * m))
    expected[:m, :m] = expected[m:, m:] = 1 / m
    np.testing.assert_allclose(gram, expected, atol=1e-8)


@pytest.mark.parametrize("seed", range(3))
def test_lse_eigenvalues_bounded(seed):
    g = erdos_renyi(50, 0.1, seed=seed)
    vals = lse(g, 10).retained_eigenvalues
    assert np.all(np.abs(vals) <= 1 + 1e-10)


def test_profile_likelihood_two_dominant():
    values = [10, 9.5, 0.1, 0.05, 0.02, 0.01]
    expected = profile_likelihood_oracle(values)
    assert expected == 2
    assert select_dimension(Spectrum(values, 100)) == expected


@pytest.mark.parametrize("seed", range(10))
def test_profile_likelihood_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    values = np.concatenate([rng.uniform(20, 40, rng.integers(1, 4)), rng.uniform(0, 5, 20)])
    s = Spectrum(values, 10_000)
    assert select_dimension(s) == profile_likelihood_oracle(values)


def test_profile_likelihood_complete_graph():
    n = 12
    s = spectrum(complete_graph(n))
    np.testing.assert_allclose(np.abs(s.eigenvalues), [n - 1] + [1] * (n - 1), atol=1e-10)
    assert select_dimension(s) == 1


def test_all_equal_spectrum():
    assert select_dimension(Spectrum(np.ones(20), 20)) == 1


def test_threshold_floor():
    n = 100
    cutoff = 2 * np.sqrt(n * np.log(n))
    s = Spectrum(np.full(10, cutoff / 2), n)
    assert select_dimension(s, DimensionMethod.THRESHOLD) == 1
    s = Spectrum([cutoff * 3, cutoff * 2, 1.0, 0.5], n)
    assert select_dimension(s, "threshold") == 2


def test_dimension_cap():
    assert dimension_cap(80) == int(80 / np.log(80))
    assert dimension_cap(4) == 2
    values = np.concatenate([np.full(10, 100.0), np.zeros(2)])
    assert select_dimension(Spectrum(values, 12)) == dimension_cap(12)

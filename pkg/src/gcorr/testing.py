"""Permutation inference and simulation harnesses."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np
import pandas as pd
from scipy.spatial.distance import cdist

from .correlation import (
    _centered_similarity,
    _correlate,
    centered_gram,
    dcov_latent,
    gcov_embeddings,
    hcorr_latent,
    hsic_latent,
    inner,
)
from .graphgen import Graph, Setting, as_seed, sample_graph, sample_pair
from .kernel import GAUSSIAN, LAPLACE, KernelSpec, kernel_matrix
from .spectral import Embedding, ase, lse, select_dimension, spectrum

DEFAULT_PERMUTATIONS = 1000


@dataclass(frozen=True)
class TestReport:
    statistic: float
    p_value: float
    permutations: int
    exceed_count: int
    d: int
    seed: int
    degenerate: bool = False

    __test__ = False  # not a pytest class

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PowerEstimate:
    setting: str
    n: int
    alpha: float
    replicates: int
    rejections: int
    power: float
    statistic: str = "gcorr"


def child_seed(seed: int, *keys: int) -> int:
    """Seed for a sub-task, fixed by ``(seed, keys)`` alone."""
    ss = np.random.SeedSequence(as_seed(seed), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, np.uint64)[0])


def permutation(n: int, seed: int, index: int) -> np.ndarray:
    """The ``index``-th random relabeling drawn by a test with master ``seed``."""
    ss = np.random.SeedSequence(as_seed(seed), spawn_key=(int(index),))
    return np.random.default_rng(ss).permutation(n)


def _permuted_inner(kc: np.ndarray, lc: np.ndarray, seed: int, indices) -> list[float]:
    n = kc.shape[0]
    out = []
    for i in indices:
        p = permutation(n, seed, i)
        out.append(inner(kc, lc[np.ix_(p, p)]))
    return out


def _permutation_core(kc, lc, permutations, seed, workers=1):
    """Observed correlation and exceedance count for U-centered ``kc``, ``lc``.

    Permuting the second matrix's rows and columns jointly is the same as
    relabeling the nodes of the second graph, and both variances are
    permutation invariant, so only the cross term is recomputed.
    """
    if permutations < 1:
        raise ValueError(f"permutations must be >= 1, got {permutations}")
    obs = _correlate(kc, lc, 0)
    if obs.degenerate:
        # every permuted statistic is 0 too, and ties count as exceedances
        return obs, permutations
    norm = np.sqrt(obs.gvar1 * obs.gvar2)
    observed_cov = obs.gcov
    idx = np.arange(permutations)
    if workers <= 1:
        covs = _permuted_inner(kc, lc, seed, idx)
    else:
        chunks = np.array_split(idx, workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(lambda c: _permuted_inner(kc, lc, seed, c), chunks)
            covs = [v for part in parts for v in part]
    permuted = np.asarray(covs) / norm
    exceed = int(np.sum(permuted >= observed_cov / norm))
    return obs, exceed


def permutation_test(e1: Embedding, e2: Embedding, permutations: int = DEFAULT_PERMUTATIONS,
                     seed: int = 0, workers: int = 1) -> TestReport:
    """Permutation test of independence on the sample graph correlation.

    Parameters
    ----------
    e1, e2 : Embedding
        Embeddings of the two graphs on the same node set.
    permutations : int
        Number of random relabelings B.
    seed : int
        Master seed; permutation i draws from its own substream, so the
        result does not depend on ``workers``.
    workers : int
        Threads used to evaluate permutations.

    Returns
    -------
    TestReport
        ``p_value = (1 + R) / (1 + B)`` where R counts permuted statistics
        that are >= the observed one.
    """
    if e1.n != e2.n:
        raise ValueError(f"node-count mismatch: {e1.n} vs {e2.n}")
    if e1.n < 4:
        raise ValueError("need at least 4 nodes")
    seed = as_seed(seed)
    obs, exceed = _permutation_core(centered_gram(e1), centered_gram(e2), permutations, seed, workers)
    return TestReport(
        statistic=obs.gcorr,
        p_value=(1 + exceed) / (1 + permutations),
        permutations=permutations,
        exceed_count=exceed,
        d=max(e1.d, e2.d),
        seed=seed,
        degenerate=obs.degenerate,
    )


def permuted_statistics(e1: Embedding, e2: Embedding, perms: Sequence[np.ndarray],
                        method: str = "conjugate") -> np.ndarray:
    """gCorr under each relabeling of the second graph.

    ``method="conjugate"`` permutes the precomputed U-centered Gram matrix;
    ``method="reembed"`` shuffles the embedding rows and rebuilds the Gram
    matrix and its centering from scratch. The two agree up to rounding.
    """
    if method == "conjugate":
        kc, lc = centered_gram(e1), centered_gram(e2)
        return np.array([_correlate(kc, lc[np.ix_(p, p)], 0).gcorr for p in perms])
    if method == "reembed":
        out = []
        for p in perms:
            shuffled = Embedding(e2.rows[p], e2.retained_eigenvalues, e2.kind)
            out.append(gcov_embeddings(e1, shuffled).gcorr)
        return np.array(out)
    raise ValueError(f"unknown method {method!r}")


def default_dimension(g1, g2) -> int:
    """Larger of the profile-likelihood choices for the two graphs."""
    return max(select_dimension(spectrum(g1)), select_dimension(spectrum(g2)))


def independence_test(g1: Graph, g2: Graph, d: int | None = None,
                      permutations: int = DEFAULT_PERMUTATIONS, seed: int = 0,
                      workers: int = 1) -> TestReport:
    """ASE both graphs at dimension ``d`` and run the permutation test."""
    if g1.n != g2.n:
        raise ValueError(f"node-count mismatch: {g1.n} vs {g2.n}")
    if d is None:
        d = default_dimension(g1, g2)
    return permutation_test(ase(g1, d), ase(g2, d), permutations, seed, workers)


def lse_dcor_test(g1: Graph, g2: Graph, d: int, permutations: int = DEFAULT_PERMUTATIONS,
                  seed: int = 0, workers: int = 1) -> TestReport:
    """Two-step baseline: distance correlation of the Laplacian embeddings."""
    if g1.n != g2.n:
        raise ValueError(f"node-count mismatch: {g1.n} vs {g2.n}")
    x, y = lse(g1, d).rows, lse(g2, d).rows
    kc = _centered_similarity(cdist(x, x))
    lc = _centered_similarity(cdist(y, y))
    obs, exceed = _permutation_core(kc, lc, permutations, as_seed(seed), workers)
    return TestReport(obs.gcorr, (1 + exceed) / (1 + permutations), permutations, exceed, d,
                      as_seed(seed), obs.degenerate)


# --- simulation harnesses ----------------------------------------------------

def _resolve_rho(rho, n: int) -> float:
    return float(rho(n)) if callable(rho) else float(rho)


def convergence_study(
    setting=Setting.LINEAR,
    n_grid: Sequence[int] = (100, 500, 1000),
    noise_level: float = 0.0,
    kernels: tuple[KernelSpec, KernelSpec] = (GAUSSIAN, LAPLACE),
    d_range: Sequence[int] = range(1, 6),
    replicates: int = 10,
    seed: int = 0,
    rho: float | Callable[[int], float] = 1.0,
    per_replicate: bool = False,
) -> pd.DataFrame:
    """Sample gCorr (averaged over ``d_range``) next to the latent-position HSIC.

    For each n and replicate one latent draw generates both graphs; the HSIC
    columns are computed on that same draw with the generating kernels.
    ``hsic_corr`` is HSIC normalised to a correlation (directly comparable to
    ``gcorr``); ``hsic`` is the raw unbiased hCov.

    With ``per_replicate=True`` one row per (n, replicate) is returned,
    otherwise one row per n with replicate means and the median absolute
    gap ``|gcorr - hsic_corr|``.
    """
    n_grid = list(n_grid)
    d_range = list(d_range)
    if not n_grid or n_grid != sorted(n_grid):
        raise ValueError("n_grid must be nonempty and ascending")
    k1, k2 = kernels
    rows = []
    for n in n_grid:
        rho_n = _resolve_rho(rho, n)
        for r in range(replicates):
            sample, g1, g2 = sample_pair(setting, n, k1, k2, noise_level, rho_n,
                                         child_seed(seed, n, r))
            dmax = max(d_range)
            e1, e2 = ase(g1, dmax), ase(g2, dmax)
            gcorrs = [gcov_embeddings(e1.truncate(d), e2.truncate(d)).gcorr for d in d_range]
            hc = hcorr_latent(sample.x, sample.y, k1, k2)
            rows.append({
                "n": n,
                "replicate": r,
                "rho": rho_n,
                "gcorr": float(np.mean(gcorrs)),
                "hsic_corr": hc,
                "hsic": hsic_latent(sample.x, sample.y, k1, k2),
                "gap": abs(float(np.mean(gcorrs)) - hc),
            })
    table = pd.DataFrame(rows)
    if per_replicate:
        return table
    summary = table.groupby("n", sort=True).agg(
        replicates=("replicate", "size"),
        rho=("rho", "first"),
        gcorr=("gcorr", "mean"),
        hsic_corr=("hsic_corr", "mean"),
        hsic=("hsic", "mean"),
        gap_median=("gap", "median"),
    )
    return summary.reset_index()


def power_study(
    setting=Setting.LINEAR,
    n_grid: Sequence[int] = (100,),
    noise_level: float = 0.0,
    permutations: int = 199,
    alpha: float = 0.05,
    replicates: int = 50,
    seed: int = 0,
    kernels: tuple[KernelSpec, KernelSpec] = (GAUSSIAN, LAPLACE),
    d: int | None = None,
    statistics: Sequence[str] = ("gcorr", "lse-dcor"),
    workers: int = 1,
) -> list[PowerEstimate]:
    """Rejection rate at level ``alpha`` for each n and each statistic.

    ``gcorr`` is the one-step ASE statistic; ``lse-dcor`` is distance
    correlation on Laplacian embeddings. When ``d`` is None it is chosen per
    replicate by profile likelihood (the ``independence_test`` default).
    """
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    unknown = set(statistics) - {"gcorr", "lse-dcor"}
    if unknown:
        raise ValueError(f"unknown statistics: {sorted(unknown)}")
    k1, k2 = kernels
    setting = Setting(setting)
    out = []
    for n in n_grid:
        rejections = dict.fromkeys(statistics, 0)
        for r in range(replicates):
            s = child_seed(seed, n, r)
            _, g1, g2 = sample_pair(setting, n, k1, k2, noise_level, 1.0, s)
            dim = default_dimension(g1, g2) if d is None else d
            perm_seed = child_seed(s, 1)
            if "gcorr" in rejections:
                rep = independence_test(g1, g2, dim, permutations, perm_seed, workers)
                rejections["gcorr"] += rep.p_value <= alpha
            if "lse-dcor" in rejections:
                rep = lse_dcor_test(g1, g2, dim, permutations, perm_seed, workers)
                rejections["lse-dcor"] += rep.p_value <= alpha
        for stat, rej in rejections.items():
            out.append(PowerEstimate(setting.value, n, alpha, replicates, int(rej),
                                     rej / replicates, stat))
    return out


def null_density_study(n: int = 200, replicates: int = 500, seed: int = 0,
                       hypothesis: str = "h0", d: int | None = None) -> np.ndarray:
    """Sample gCov over independent replicates of the density configuration.

    X ~ Beta(1, 2) drives a Gaussian-kernel graph and Y a Laplace-kernel
    graph (both bandwidth 1). Under ``"h0"`` Y ~ N(0, 1) independently of X;
    under ``"h1"`` Y = X.
    """
    if replicates < 2:
        raise ValueError("replicates must be >= 2")
    if hypothesis not in ("h0", "h1"):
        raise ValueError(f"hypothesis must be 'h0' or 'h1', got {hypothesis!r}")
    values = np.empty(replicates)
    for r in range(replicates):
        s_lat, s_g1, s_g2 = (child_seed(seed, r, j) for j in range(3))
        rng = np.random.default_rng(s_lat)
        x = rng.beta(1.0, 2.0, n)
        y = rng.normal(0.0, 1.0, n) if hypothesis == "h0" else x.copy()
        g1 = sample_graph(kernel_matrix(GAUSSIAN, x), 1.0, s_g1)
        g2 = sample_graph(kernel_matrix(LAPLACE, y), 1.0, s_g2)
        dim = default_dimension(g1, g2) if d is None else d
        values[r] = gcov_embeddings(ase(g1, dim), ase(g2, dim)).gcov
    return values


def laplacian_study(
    setting=Setting.LINEAR,
    n_grid: Sequence[int] = (200, 1000),
    d: int = 2,
    replicates: int = 20,
    seed: int = 0,
    noise_level: float = 0.0,
    kernels: tuple[KernelSpec, KernelSpec] = (GAUSSIAN, LAPLACE),
) -> pd.DataFrame:
    """Distance covariance of graph LSEs against that of the kernel-matrix LSEs.

    One row per (n, replicate) with ``gap = |lse_dcov(A1, A2) - dcov(L(K1), L(K2))|``
    where the second term embeds the known kernel matrices.
    """
    k1, k2 = kernels
    rows = []
    for n in n_grid:
        for r in range(replicates):
            sample, g1, g2 = sample_pair(setting, n, k1, k2, noise_level, 1.0,
                                         child_seed(seed, n, r))
            graph_val = dcov_latent(lse(g1, d).rows, lse(g2, d).rows)
            kernel_val = dcov_latent(lse(kernel_matrix(k1, sample.x), d).rows,
                                     lse(kernel_matrix(k2, sample.y), d).rows)
            rows.append({"n": n, "replicate": r, "lse_dcov": graph_val,
                         "kernel_dcov": kernel_val, "gap": abs(graph_val - kernel_val)})
    return pd.DataFrame(rows)

"""Unbiased graph covariance / correlation and its latent-position references.

Everything reduces to the same two steps: U-center an n x n similarity
matrix, then take the normalised Frobenius inner product

    (A . B) = 1 / (n (n - 3)) * sum_{i != j} a_ij b_ij.

For graphs the similarity matrix is the Gram matrix of an adjacency spectral
embedding; for latent positions it is a kernel or distance matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np
from scipy.spatial.distance import cdist

from .kernel import KernelSpec, kernel_matrix
from .spectral import Embedding, ase, lse

ORACLE_MAX_N = 14
# centered matrices whose entries are this small relative to the input are
# rounding noise around an exact zero (e.g. the Gram matrix of a complete graph)
DEGENERATE_RTOL = 1e-10


@dataclass(frozen=True)
class GraphStat:
    gcov: float
    gvar1: float
    gvar2: float
    gcorr: float
    d: int
    degenerate: bool = False


def _square(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def u_center(m) -> np.ndarray:
    """U-centered version of a symmetric similarity matrix.

    The diagonal of ``m`` is ignored (treated as zero). Off-diagonal entries
    become ``m_ij - r_i/(n-2) - c_j/(n-2) + s/((n-1)(n-2))`` with row sums
    ``r``, column sums ``c`` and grand sum ``s``; the diagonal of the result
    is zero, and every row and column sums to zero.
    """
    m = _square(m).copy()
    n = m.shape[0]
    if n < 4:
        raise ValueError(f"U-centering needs n >= 4, got {n}")
    np.fill_diagonal(m, 0.0)
    row = m.sum(axis=1)
    col = m.sum(axis=0)
    total = row.sum()
    out = m - row[:, None] / (n - 2) - col[None, :] / (n - 2) + total / ((n - 1) * (n - 2))
    np.fill_diagonal(out, 0.0)
    return out


def inner(a, b) -> float:
    a = _square(a)
    b = _square(b)
    if a.shape != b.shape:
        raise ValueError(f"order mismatch: {a.shape} vs {b.shape}")
    n = a.shape[0]
    if n < 4:
        raise ValueError(f"inner product needs n >= 4, got {n}")
    prod = a * b
    np.fill_diagonal(prod, 0.0)
    return float(prod.sum() / (n * (n - 3)))


def _centered_similarity(s: np.ndarray) -> np.ndarray:
    c = u_center(s)
    scale = max(1.0, float(np.abs(s).max()))
    if np.abs(c).max() <= DEGENERATE_RTOL * scale:
        c[:] = 0.0
    return c


def centered_gram(e: Embedding) -> np.ndarray:
    """U-centered estimated kernel matrix ``rows @ rows.T`` (diagonal dropped)."""
    return _centered_similarity(e.gram())


def _correlate(kc: np.ndarray, lc: np.ndarray, d: int) -> GraphStat:
    gcov = inner(kc, lc)
    gvar1 = inner(kc, kc)
    gvar2 = inner(lc, lc)
    degenerate = not (gvar1 > 0 and gvar2 > 0)
    gcorr = 0.0 if degenerate else gcov / np.sqrt(gvar1 * gvar2)
    return GraphStat(gcov, gvar1, gvar2, float(gcorr), d, degenerate)


def gcov_embeddings(e1: Embedding, e2: Embedding) -> GraphStat:
    """Graph covariance, variances and correlation from two embeddings."""
    if e1.n != e2.n:
        raise ValueError(f"node-count mismatch: {e1.n} vs {e2.n}")
    return _correlate(centered_gram(e1), centered_gram(e2), max(e1.d, e2.d))


def gcov_graphs(g1, g2, d: int) -> GraphStat:
    """One-step sample graph correlation at embedding dimension ``d``.

    Both graphs are embedded with ASE, the Gram matrices act as estimated
    kernel matrices, and the U-centered inner products give gCov, gVar and
    gCorr. When either variance vanishes ``gcorr`` is reported as 0 with
    ``degenerate=True``.

    Examples
    --------
    >>> from gcorr.graphgen import erdos_renyi
    >>> g = erdos_renyi(30, 0.3, seed=1)
    >>> round(gcov_graphs(g, g, 3).gcorr, 12)
    1.0
    """
    n1 = g1.n if hasattr(g1, "n") else np.shape(g1)[0]
    n2 = g2.n if hasattr(g2, "n") else np.shape(g2)[0]
    if n1 != n2:
        raise ValueError(f"node-count mismatch: {n1} vs {n2}")
    return gcov_embeddings(ase(g1, d), ase(g2, d))


def _rows(x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return x[:, None] if x.ndim == 1 else x


def _check_rows(x, y) -> tuple[np.ndarray, np.ndarray]:
    x, y = _rows(x), _rows(y)
    if x.shape[0] != y.shape[0]:
        raise ValueError(f"row mismatch: {x.shape[0]} vs {y.shape[0]}")
    if x.shape[0] < 4:
        raise ValueError(f"need n >= 4 rows, got {x.shape[0]}")
    return x, y


def hsic_latent(x, y, kx: KernelSpec, ky: KernelSpec) -> float:
    """Unbiased HSIC (hCov) computed directly on latent positions."""
    x, y = _check_rows(x, y)
    return inner(u_center(kernel_matrix(kx, x)), u_center(kernel_matrix(ky, y)))


def hcorr_latent(x, y, kx: KernelSpec, ky: KernelSpec) -> float:
    """HSIC normalised to a correlation; 0 when either variance vanishes."""
    x, y = _check_rows(x, y)
    kc = _centered_similarity(kernel_matrix(kx, x))
    lc = _centered_similarity(kernel_matrix(ky, y))
    return _correlate(kc, lc, 0).gcorr


def _distance_centered(x: np.ndarray) -> np.ndarray:
    return _centered_similarity(cdist(x, x, "euclidean"))


def dcov_latent(x, y) -> float:
    """Unbiased (U-centered) sample distance covariance."""
    x, y = _check_rows(x, y)
    return inner(u_center(cdist(x, x, "euclidean")), u_center(cdist(y, y, "euclidean")))


def dcor_latent(x, y) -> float:
    x, y = _check_rows(x, y)
    return _correlate(_distance_centered(x), _distance_centered(y), 0).gcorr


def lse_dcov(g1, g2, d: int) -> float:
    """Two-step statistic: LSE of both graphs, then distance covariance of the rows."""
    e1, e2 = lse(g1, d), lse(g2, d)
    if e1.n != e2.n:
        raise ValueError(f"node-count mismatch: {e1.n} vs {e2.n}")
    return dcov_latent(e1.rows, e2.rows)


# --- O(n^4) U-statistic machinery -------------------------------------------

_PERMS4 = np.array(list(itertools.permutations(range(4))))


def _check_oracle_inputs(k, l) -> tuple[np.ndarray, np.ndarray]:
    k, l = _square(k), _square(l)
    if k.shape != l.shape:
        raise ValueError(f"order mismatch: {k.shape} vs {l.shape}")
    n = k.shape[0]
    if not 4 <= n <= ORACLE_MAX_N:
        raise ValueError(f"enumeration is limited to 4 <= n <= {ORACLE_MAX_N}, got {n}")
    return k, l


def _core_values(k: np.ndarray, l: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Symmetrised core ``h`` on every 4-subset, plus the subsets themselves.

    ``h = 1/4! * sum over orderings (s,t,u,v) of
    K_st L_st + K_st L_uv - 2 K_st L_su``.
    """
    n = k.shape[0]
    subsets = np.array(list(itertools.combinations(range(n), 4)))
    h = np.zeros(len(subsets))
    for p in _PERMS4:
        s, t, u, v = (subsets[:, p[j]] for j in range(4))
        kst = k[s, t]
        h += kst * l[s, t] + kst * l[u, v] - 2.0 * kst * l[s, u]
    return h / 24.0, subsets


def gcov_ustat_oracle(k, l) -> float:
    """Graph covariance as an explicit U-statistic of order 4.

    Brute-force enumeration over all 4-subsets, so only small ``n`` is
    accepted. Agrees with ``inner(u_center(k), u_center(l))``.
    """
    k, l = _check_oracle_inputs(k, l)
    h, _ = _core_values(k, l)
    return float(h.mean())


def projection_moment(k, l) -> float:
    """Mean over nodes i of the squared average of ``h`` over 4-sets containing i."""
    k, l = _check_oracle_inputs(k, l)
    n = k.shape[0]
    h, subsets = _core_values(k, l)
    per_node = np.zeros(n)
    for j in range(4):
        np.add.at(per_node, subsets[:, j], h)
    per_node /= comb(n - 1, 3)
    return float(np.mean(per_node**2))


def asymptotic_variance(k, l) -> float:
    """Plug-in ``16 (R - gCov^2)`` for the Gaussian limit of ``sqrt(n) gCov_n``."""
    r = projection_moment(k, l)
    u = gcov_ustat_oracle(k, l)
    return 16.0 * (r - u**2)

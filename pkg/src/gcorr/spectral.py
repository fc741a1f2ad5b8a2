"""Adjacency and Laplacian spectral embeddings.

Eigenpairs are ranked by eigenvalue magnitude and scaled by ``|lambda|^(1/2)``
so rows stay real when a retained eigenvalue is negative. Embedding rows are
only defined up to an orthogonal transform; everything downstream consumes
the Gram matrix ``rows @ rows.T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .graphgen import Graph

DENSE_SOLVER_MAX_N = 3000
ITERATIVE_TOL = 1e-10


class EmbeddingKind(str, Enum):
    ASE = "ase"
    LSE = "lse"


class DimensionMethod(str, Enum):
    PROFILE_LIKELIHOOD = "profile-likelihood"
    THRESHOLD = "threshold"


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: np.ndarray
    n: int

    def __post_init__(self):
        vals = np.asarray(self.eigenvalues, dtype=np.float64)
        order = np.argsort(-np.abs(vals), kind="stable")
        object.__setattr__(self, "eigenvalues", vals[order])


@dataclass(frozen=True, eq=False)
class Embedding:
    rows: np.ndarray
    retained_eigenvalues: np.ndarray
    kind: EmbeddingKind = EmbeddingKind.ASE

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def d(self) -> int:
        return self.rows.shape[1]

    def gram(self) -> np.ndarray:
        return self.rows @ self.rows.T

    def truncate(self, d: int) -> "Embedding":
        """Leading ``d`` columns; same as re-embedding at dimension ``d``."""
        if not 1 <= d <= self.d:
            raise ValueError(f"d must lie in [1, {self.d}], got {d}")
        return Embedding(self.rows[:, :d], self.retained_eigenvalues[:d], self.kind)


def _matrix(m) -> np.ndarray:
    if isinstance(m, Graph):
        return m.adjacency.astype(np.float64)
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def top_eigenpairs(m: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    """The ``d`` eigenpairs of a symmetric matrix with largest ``|lambda|``.

    Uses a full dense decomposition up to ``DENSE_SOLVER_MAX_N`` nodes and
    restarted Lanczos (ARPACK) beyond that.
    """
    n = m.shape[0]
    if not 1 <= d <= n:
        raise ValueError(f"d must lie in [1, {n}], got {d}")
    if n <= DENSE_SOLVER_MAX_N or d >= n - 1:
        vals, vecs = scipy.linalg.eigh(m)
    else:
        try:
            vals, vecs = scipy.sparse.linalg.eigsh(
                m, k=d, which="LM", tol=ITERATIVE_TOL, maxiter=10 * n,
                v0=np.ones(n),
            )
        except scipy.sparse.linalg.ArpackNoConvergence as exc:
            raise RuntimeError(f"eigensolver did not converge for d={d}") from exc
    order = np.argsort(-np.abs(vals), kind="stable")[:d]
    return vals[order], vecs[:, order]


def spectrum(g) -> Spectrum:
    m = _matrix(g)
    return Spectrum(scipy.linalg.eigvalsh(m), m.shape[0])


def _embed(m: np.ndarray, d: int, kind: EmbeddingKind) -> Embedding:
    vals, vecs = top_eigenpairs(m, d)
    # fix the sign of each eigenvector so results do not depend on the solver
    flip = np.sign(vecs[np.argmax(np.abs(vecs), axis=0), np.arange(vecs.shape[1])])
    flip[flip == 0] = 1.0
    rows = vecs * flip * np.sqrt(np.abs(vals))
    return Embedding(rows, vals, kind)


def ase(g, d: int) -> Embedding:
    """Adjacency spectral embedding ``U_d |S_d|^(1/2)``.

    Parameters
    ----------
    g : Graph or array_like
        Adjacency matrix (any symmetric matrix is accepted).
    d : int
        Embedding dimension, ``1 <= d <= n``.
    """
    return _embed(_matrix(g), d, EmbeddingKind.ASE)


def normalized_laplacian(m) -> np.ndarray:
    """``D^(-1/2) M D^(-1/2)`` with ``D = diag(M 1)``.

    Zero-degree nodes get zero rows and columns.
    """
    m = _matrix(m)
    if np.any(m < 0):
        raise ValueError("normalized_laplacian requires nonnegative entries")
    deg = m.sum(axis=1)
    inv_sqrt = np.zeros_like(deg)
    np.divide(1.0, np.sqrt(deg), out=inv_sqrt, where=deg > 0)
    out = inv_sqrt[:, None] * m * inv_sqrt[None, :]
    return (out + out.T) / 2


def lse(g, d: int) -> Embedding:
    """Laplacian spectral embedding: ASE applied to ``normalized_laplacian(g)``."""
    return _embed(normalized_laplacian(g), d, EmbeddingKind.LSE)


def dimension_cap(n: int) -> int:
    """Largest admissible embedding dimension, ``min(n - 1, floor(n / log n))``."""
    if n < 2:
        return 1
    return max(1, min(n - 1, int(np.floor(n / np.log(n)))))


def _profile_likelihood_elbow(values: np.ndarray) -> int:
    # Split the sorted magnitudes into a leading and a trailing group, each
    # Gaussian with its own mean and a shared variance. With the variance at
    # its MLE the log-likelihood is monotone in the pooled sum of squares, so
    # the elbow minimises that sum. argmin keeps the first (smallest) q on ties.
    p = values.size
    if p < 2:
        return 1
    ss = np.empty(p - 1)
    for q in range(1, p):
        head, tail = values[:q], values[q:]
        ss[q - 1] = ((head - head.mean()) ** 2).sum() + ((tail - tail.mean()) ** 2).sum()
    scale = max(float((values**2).max()), np.finfo(float).tiny)
    ss[ss <= 1e-12 * scale * p] = 0.0
    return int(np.argmin(ss)) + 1


def select_dimension(s: Spectrum, method=DimensionMethod.PROFILE_LIKELIHOOD,
                     n: int | None = None, threshold: float | None = None) -> int:
    """Pick an embedding dimension from a spectrum.

    ``ProfileLikelihood`` places the elbow in the sorted eigenvalue
    magnitudes. ``Threshold`` counts eigenvalues whose magnitude exceeds
    ``threshold`` (default ``2 sqrt(n log n)``, the adjacency concentration
    scale). Either result is clipped to ``[1, dimension_cap(n)]``.
    """
    method = DimensionMethod(method)
    n = s.n if n is None else n
    mags = np.abs(s.eigenvalues)
    if mags.size == 0:
        raise ValueError("spectrum is empty")
    if method is DimensionMethod.PROFILE_LIKELIHOOD:
        if np.allclose(mags, mags[0]):
            d = 1
        else:
            d = _profile_likelihood_elbow(mags)
    else:
        if threshold is None:
            threshold = 2.0 * np.sqrt(n * np.log(n))
        d = int((mags > threshold).sum())
    return int(min(max(d, 1), dimension_cap(n)))

"""Latent position samplers and Bernoulli graph sampling.

The nine dependence settings are univariate (p = q = 1). ``noise_level`` is
the variance c of the additive normal noise; noise is switched on exactly
when ``noise_level > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .kernel import KernelSpec, kernel_matrix


class Setting(str, Enum):
    LINEAR = "linear"
    EXPONENTIAL = "exponential"
    CUBIC = "cubic"
    JOINT_NORMAL = "joint-normal"
    W_SHAPE = "w-shape"
    CIRCLE = "circle"
    DIAMOND = "diamond"
    MULTIPLICATIVE_NOISE = "multiplicative-noise"
    MULTIMODAL_INDEPENDENCE = "multimodal-independence"


JOINT_NORMAL_COV = np.array([[1.0, 0.5], [0.5, 2.0]])

_U64 = np.uint64


def as_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def spawn_seeds(seed: int, count: int) -> list[int]:
    """Derive ``count`` decorrelated u64 seeds from a master seed."""
    children = np.random.SeedSequence(as_seed(seed)).spawn(count)
    return [int(c.generate_state(1, _U64)[0]) for c in children]


@dataclass(frozen=True)
class LatentSample:
    x: np.ndarray
    y: np.ndarray
    setting: Setting
    noise_level: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.x.shape[0] != self.y.shape[0]:
            raise ValueError("x and y must have the same number of rows")
        if self.x.shape[0] < 2:
            raise ValueError("need at least 2 rows")

    @property
    def n(self) -> int:
        return self.x.shape[0]


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph stored as a dense 0/1 adjacency matrix."""

    adjacency: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.adjacency)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {a.shape}")
        if not np.isin(a, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if np.any(np.diagonal(a)):
            raise ValueError("adjacency must have a zero diagonal")
        object.__setattr__(self, "adjacency", a.astype(np.uint8))

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def n_edges(self) -> int:
        return int(np.triu(self.adjacency, 1).sum())

    def density(self) -> float:
        return self.n_edges / (self.n * (self.n - 1) / 2)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.n_edges})"


def sample_latent(setting, n: int, noise_level: float = 0.0, seed: int = 0) -> LatentSample:
    """Draw ``n`` i.i.d. latent pairs from one of the dependence settings."""
    setting = Setting(setting)
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if noise_level < 0:
        raise ValueError(f"noise_level must be nonnegative, got {noise_level}")
    rng = np.random.default_rng(as_seed(seed))
    sd = np.sqrt(noise_level)
    kappa = 1.0 if noise_level > 0 else 0.0

    def noise():
        return kappa * rng.normal(0.0, sd, n) if kappa else np.zeros(n)

    if setting is Setting.LINEAR:
        x = rng.beta(1.0, 2.0, n)
        y = x + noise()
    elif setting is Setting.EXPONENTIAL:
        x = rng.beta(1.0, 2.0, n)
        y = np.exp(x) + noise()
    elif setting is Setting.CUBIC:
        x = rng.beta(1.0, 2.0, n)
        t = x - 1.0 / 3.0
        y = 128 * t**3 + 48 * t**2 - 12 * t + noise()
    elif setting is Setting.JOINT_NORMAL:
        xy = rng.multivariate_normal(np.zeros(2), JOINT_NORMAL_COV, n)
        x, y = xy[:, 0], xy[:, 1]
    elif setting is Setting.W_SHAPE:
        x = rng.beta(1.0, 2.0, n)
        u = rng.uniform(-1.0, 1.0, n)
        y = 4 * ((x**2 - 0.5) ** 2 - u / 500) + 0.5 * noise()
    elif setting is Setting.CIRCLE:
        theta = rng.uniform(0.0, 2 * np.pi, n)
        x = np.cos(theta)
        y = np.sin(theta) + 0.5 * noise()
    elif setting is Setting.DIAMOND:
        u = rng.uniform(-1.0, 1.0, n)
        v = rng.uniform(-1.0, 1.0, n)
        theta = -np.pi / 4
        x = u * np.cos(theta) + v * np.sin(theta)
        y = -u * np.sin(theta) + v * np.cos(theta) + 0.5 * noise()
    elif setting is Setting.MULTIPLICATIVE_NOISE:
        x = rng.normal(0.0, 1.0, n)
        u = rng.normal(0.0, 1.0, n)
        y = x * u + 0.5 * noise()
    else:
        u = rng.normal(0.0, 1.0, n)
        v = rng.normal(0.0, 1.0, n)
        u1 = rng.binomial(1, 0.5, n)
        v1 = rng.binomial(1, 0.5, n)
        x = u / 3 + 2 * u1 - 1
        y = v / 3 + 2 * v1 - 1
    return LatentSample(x[:, None], y[:, None], setting, float(noise_level), as_seed(seed))


def _bernoulli_upper(probs: np.ndarray, rng: np.random.Generator) -> Graph:
    n = probs.shape[0]
    iu = np.triu_indices(n, 1)
    edges = rng.random(iu[0].size) < probs[iu]
    a = np.zeros((n, n), dtype=np.uint8)
    a[iu] = edges
    return Graph(a | a.T)


def sample_graph(k, rho: float = 1.0, seed: int = 0) -> Graph:
    """Sample edges independently with probability ``rho * k[i, j]`` for i < j."""
    if not 0 < rho <= 1:
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    k = np.asarray(k, dtype=np.float64)
    if k.ndim != 2 or k.shape[0] != k.shape[1]:
        raise ValueError(f"kernel matrix must be square, got shape {k.shape}")
    if np.any(k < 0) or np.any(k > 1):
        raise ValueError("kernel matrix entries must lie in [0, 1]")
    return _bernoulli_upper(rho * k, np.random.default_rng(as_seed(seed)))


def erdos_renyi(n: int, p: float, seed: int = 0) -> Graph:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return _bernoulli_upper(np.full((n, n), p), np.random.default_rng(as_seed(seed)))


def sample_pair(
    setting,
    n: int,
    kernel1: KernelSpec,
    kernel2: KernelSpec,
    noise_level: float = 0.0,
    rho: float = 1.0,
    seed: int = 0,
) -> tuple[LatentSample, Graph, Graph]:
    """Latent draw plus the two graphs it generates.

    The latent positions and the two edge sets each use their own substream
    of ``seed``.
    """
    s_latent, s_g1, s_g2 = spawn_seeds(seed, 3)
    sample = sample_latent(setting, n, noise_level, s_latent)
    g1 = sample_graph(kernel_matrix(kernel1, sample.x), rho, s_g1)
    g2 = sample_graph(kernel_matrix(kernel2, sample.y), rho, s_g2)
    return sample, g1, g2

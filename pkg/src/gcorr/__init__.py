"""Kernel-based correlation and independence tests for latent position random graphs."""

__version__ = "0.1.0"

from .correlation import (
    GraphStat,
    asymptotic_variance,
    dcor_latent,
    dcov_latent,
    gcov_embeddings,
    gcov_graphs,
    gcov_ustat_oracle,
    hcorr_latent,
    hsic_latent,
    inner,
    lse_dcov,
    projection_moment,
    u_center,
)
from .graphgen import Graph, LatentSample, Setting, erdos_renyi, sample_graph, sample_latent, sample_pair
from .io import GraphFile, GraphFormat, parse_graph, read_graph, write_graph
from .kernel import GAUSSIAN, LAPLACE, KernelFamily, KernelSpec, eval_kernel, kernel_matrix
from .spectral import (
    DimensionMethod,
    Embedding,
    Spectrum,
    ase,
    lse,
    normalized_laplacian,
    select_dimension,
    spectrum,
)
from .testing import (
    PowerEstimate,
    TestReport,
    convergence_study,
    independence_test,
    laplacian_study,
    null_density_study,
    permutation_test,
    power_study,
)

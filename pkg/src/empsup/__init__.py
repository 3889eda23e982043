"""Supremum and maximizing location of the standardized uniform empirical process."""

__version__ = "0.1.0"

from .errors import (
    EmptySample,
    EmpsupError,
    InvalidA,
    InvalidAlpha,
    InvalidLambda,
    OutOfDomain,
    TooFewRecords,
    TooSmallN,
)
from .process import (
    BoundarySplit,
    Sample,
    Side,
    SupResult,
    boundary_split,
    eval_process,
    grid_oracle_sup,
    order_statistics,
    sup_unweighted,
    sup_weighted,
)
from .limits import (
    DensitySpec,
    NormingConstants,
    argmax_sup_density,
    gumbel_cdf,
    integrate_density,
    kolmogorov_cdf,
    maximal_inequality_bound,
    norming_constants,
    passage_kernel,
)
from .bridge import BridgePath, argmax_abs, sample_bridge
from .harness import (
    ExperimentConfig,
    ReplicationRecord,
    convergence_table,
    independence_tv,
    ks_distance,
    run_experiment,
    verify_maximal_inequality,
)

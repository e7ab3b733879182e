"""Free-fermion chain stirred by a moving bond-cutting obstacle.

Exact mode-matrix evolution under the piecewise-constant drive, Floquet
quasi-energy statistics, random-Slater entanglement laws, and
entanglement-link geometry.
"""

from .lattice import ChainParams, HoppingMatrix, single_body_matrix, obstacle_at
from .evolve import (
    ModeMatrix,
    StepPropagator,
    PropagatorCache,
    ground_state,
    step_propagator,
    advance,
    evolve_cycles,
)
from .observables import energy, site_densities, mode_occupations
from .entanglement import (
    binary_entropy,
    block_spectrum,
    block_entropy,
    entropy_profile,
    entanglement_links,
)
from .floquet import (
    FloquetData,
    SpacingStats,
    floquet_data,
    quasi_energies,
    spacing_statistics,
    floquet_occupations,
)
from .rse import (
    sample_random_slater,
    jacobi_density,
    mean_h2_closed,
    mean_h2_quadrature,
    entropy_approx,
    entropy_exact,
    entropy_variance,
    digamma,
    page_law,
)
from .harness import (
    ExperimentConfig,
    run_experiment,
    sweep,
    stationary_summary,
    pearson_correlation,
    fit_profile_3sine,
    rebound_time,
)

__version__ = "0.1.0"

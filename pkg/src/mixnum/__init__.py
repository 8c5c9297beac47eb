"""Inter-numerology interference analysis for mixed-numerology OFDM."""

from .basis import SubcarrierRef, pulse_continuous, pulse_discrete
from .core import Numerology, NumerologyPair, make_pair, pair_from_counts, scaling_factor
from .ini import (
    InnerProduct,
    beta,
    discretization_error_pct,
    ini_matrix,
    is_orthogonal,
    magnitude_continuous,
    magnitude_discrete,
    min_samples_for_tolerance,
    orthogonal_subsets,
    relative_distance,
    rho_continuous,
    rho_discrete,
)
from .oracle import rho_continuous_quadrature, rho_discrete_soe, segment_rho_soe
from .sim import (
    ExperimentConfig,
    SampledSignal,
    SymbolGrid,
    demodulate,
    modulate,
    multiplex,
    predict_ini,
    run_experiment,
)

__version__ = "0.1.0"

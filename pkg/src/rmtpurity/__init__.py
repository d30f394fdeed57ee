"""Purity decay of random product states under random-matrix Hamiltonians.

Monte-Carlo simulator and closed-form analytics for the entanglement growth
of bipartite random product states evolving under strong- and weak-coupling
random-matrix models, with a deterministic parallel ensemble engine and CLI
presets that reproduce the reference purity-decay figures.
"""

__version__ = "0.1.0"

from .analytics import (
    SpectralAverages,
    TimeScales,
    f_uniform,
    i_infinity,
    i_min_coe,
    short_time_coefficient,
    short_time_purity,
    spectral_averages,
    time_scales,
    weak_variance,
)
from .backend import BACKEND
from .dynamics import (
    ProductState,
    PureState,
    basis_product_state,
    evolve,
    linear_entropy,
    purity,
    random_product_state,
    tensor,
)
from .ensembles import (
    Spectrum,
    SpectrumKind,
    picket_fence_spectrum,
    sample_coe,
    sample_coupling,
    sample_goe_spectrum,
    sample_haar_orthogonal,
    sample_poisson_spectrum,
)
from .model import (
    Dimensions,
    SpectralDecomposition,
    StrongCouplingSpec,
    WeakCouplingSpec,
    build_strong,
    build_weak,
    heff_matrix,
)
from .montecarlo import (
    BasisProduct,
    CurveStats,
    ExperimentConfig,
    RandomProduct,
    coe_min_purity_mc,
    run_experiment,
    stationary_purity_mc,
)
from .streams import RngStream

__all__ = [
    "__version__",
    "BACKEND",
    "BasisProduct",
    "CurveStats",
    "Dimensions",
    "ExperimentConfig",
    "ProductState",
    "PureState",
    "RandomProduct",
    "RngStream",
    "SpectralAverages",
    "SpectralDecomposition",
    "Spectrum",
    "SpectrumKind",
    "StrongCouplingSpec",
    "TimeScales",
    "WeakCouplingSpec",
    "basis_product_state",
    "build_strong",
    "build_weak",
    "coe_min_purity_mc",
    "evolve",
    "f_uniform",
    "heff_matrix",
    "i_infinity",
    "i_min_coe",
    "linear_entropy",
    "picket_fence_spectrum",
    "purity",
    "random_product_state",
    "run_experiment",
    "sample_coe",
    "sample_coupling",
    "sample_goe_spectrum",
    "sample_haar_orthogonal",
    "sample_poisson_spectrum",
    "short_time_coefficient",
    "short_time_purity",
    "spectral_averages",
    "stationary_purity_mc",
    "tensor",
    "time_scales",
    "weak_variance",
]

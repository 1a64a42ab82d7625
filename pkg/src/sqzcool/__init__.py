"""Quantum noise spectra and optimized ground-state cooling for a
linearized optomechanical cavity with intracavity and input squeezing.

The package is organized bottom-up:

* :mod:`sqzcool.model` - parameter records, scheme tags, bath moments;
* :mod:`sqzcool.response` - susceptibility, force spectrum, cooling and
  heating rates, heating-suppression solver;
* :mod:`sqzcool.gaussian` - drift/diffusion matrices and exact Gaussian
  steady states;
* :mod:`sqzcool.cooling` - cooling limits, the thermal floor, and the
  multi-start optimizers;
* :mod:`sqzcool.fullmodel` - the three-mode laboratory model and its
  collapse onto the reduced description;
* :mod:`sqzcool.cli` - the ``sqzcool`` command-line front end.

All frequencies and rates are in units of the mechanical frequency.
"""

from .cooling import (
    CoolingLimit,
    LimitMethod,
    OptimizationResult,
    SearchSpec,
    exact_limit,
    maximize_rate,
    min_phonon_floor,
    minimize_phonons,
    rate_equation_limit,
)
from .errors import (
    BistabilityWarning,
    ConvergenceError,
    DegenerateParameterError,
    EmptyFeasibleSetError,
    HeatingDivergenceError,
    InfeasibleSuppressionError,
    InvalidParameterError,
    NearThresholdError,
    NumericalError,
    SingularityError,
    SqzCoolError,
    UnstableSystemError,
)
from .fullmodel import (
    AdiabaticReport,
    ClassicalSteadyState,
    FullModelParams,
    adiabatic_report,
    classical_steady_state,
    extract_reduced,
    frame_rotation,
)
from .gaussian import (
    GaussianSteadyState,
    build_diffusion,
    build_drift,
    stability,
    steady_state,
    symplectic_form,
)
from .model import (
    RateSet,
    ReducedParams,
    Scheme,
    SqueezedBath,
    apply_scheme,
    make_bath,
    thermal_occupancy,
)
from .response import (
    SpectrumPoint,
    SuppressionSolution,
    chi,
    parametric_threshold,
    rates,
    scan_spectrum,
    solve_suppression,
    spectrum,
    stokes_zero_eps,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # model
    "Scheme", "SqueezedBath", "ReducedParams", "RateSet",
    "make_bath", "apply_scheme", "thermal_occupancy",
    # response
    "SpectrumPoint", "SuppressionSolution", "chi", "spectrum",
    "scan_spectrum", "rates", "solve_suppression", "stokes_zero_eps",
    "parametric_threshold",
    # gaussian
    "GaussianSteadyState", "build_drift", "build_diffusion",
    "symplectic_form", "stability", "steady_state",
    # cooling
    "LimitMethod", "CoolingLimit", "SearchSpec", "OptimizationResult",
    "rate_equation_limit", "exact_limit", "min_phonon_floor",
    "minimize_phonons", "maximize_rate",
    # fullmodel
    "FullModelParams", "ClassicalSteadyState", "AdiabaticReport",
    "classical_steady_state", "extract_reduced", "frame_rotation",
    "adiabatic_report",
    # errors
    "SqzCoolError", "InvalidParameterError", "DegenerateParameterError",
    "SingularityError", "NearThresholdError", "InfeasibleSuppressionError",
    "UnstableSystemError", "HeatingDivergenceError", "EmptyFeasibleSetError",
    "ConvergenceError", "NumericalError", "BistabilityWarning",
]

"""Bohmian arrival times for squeezed states of a harmonic oscillator."""

from ._core import (
    ArrivalSetup,
    ConvergenceError,
    DetectionWindow,
    DomainError,
    GaussianState,
    OscillatorConfig,
    SingularLimitError,
    SqueezeParams,
    Symplectic2,
    bohm_velocity,
    bohmian_count,
    critical_phase,
    detection_probability,
    evolution_matrix,
    evolved_state,
    exp_squeeze_generator,
    forbidden_region_slopes,
    initial_condition_interval,
    mean_toa,
    sample_initial_conditions,
    squeeze_matrix,
    standard_count,
    time_of_arrival,
    toa_histogram_mc,
    toa_pdf,
    trajectory,
    trajectory_extrema,
    trajectory_ode,
    vacuum_state,
    validate,
)

__version__ = "0.1.0"

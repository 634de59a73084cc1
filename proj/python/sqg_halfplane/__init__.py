"""Spectral solver for the critical dissipative transport equation on a
periodic strip with a Dirichlet wall.

The heavy lifting lives in the C++ extension ``_core``; this package just
re-exports its surface.  Fields convert to and from ``(n1, n2)`` numpy arrays
of interior samples, so the usual workflow is::

    import sqg_halfplane as sqg

    grid = sqg.GridSpec()
    theta0 = sqg.make_preset(grid, "two_mode", {"amplitude": 0.5})
    traj = sqg.simulate(theta0, sqg.SolverConfig(dt=2e-3, t_end=1.0))
    final = traj.state(len(traj) - 1).to_array()
"""

from ._core import (
    AnalyticityReport,
    EstimateReport,
    Field,
    GridSpec,
    PicardResult,
    SolverConfig,
    Spectrum,
    Trajectory,
    analyticity_diagnostic,
    besov_norm,
    bilinear_transport,
    eigenvalue,
    field_from_array,
    forward_transform,
    frac_lambda,
    holder_seminorm,
    inverse_transform,
    lambda_max,
    lambda_min,
    linf_norm,
    lp_norm,
    make_preset,
    nonlinear_term,
    picard_solve,
    read_field_file,
    run_verify_battery,
    semigroup,
    simulate,
    step_evolve,
    time_derivative,
    velocity,
    write_field_file,
)

__all__ = [
    "AnalyticityReport",
    "EstimateReport",
    "Field",
    "GridSpec",
    "PicardResult",
    "SolverConfig",
    "Spectrum",
    "Trajectory",
    "analyticity_diagnostic",
    "besov_norm",
    "bilinear_transport",
    "eigenvalue",
    "field_from_array",
    "forward_transform",
    "frac_lambda",
    "holder_seminorm",
    "inverse_transform",
    "lambda_max",
    "lambda_min",
    "linf_norm",
    "lp_norm",
    "make_preset",
    "nonlinear_term",
    "picard_solve",
    "read_field_file",
    "run_verify_battery",
    "semigroup",
    "simulate",
    "step_evolve",
    "time_derivative",
    "velocity",
    "write_field_file",
]

__version__ = "0.1.0"

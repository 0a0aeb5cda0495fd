"""Bound states of a 1D Dirac particle in short-range potential wells.

Three cross-validating routes to the ground-state energy: fourth-order
perturbation theory in the coupling, Pade resummation for deep wells, and an
exact shooting solver for the two-component Dirac system.
"""

__version__ = "0.1.0"

from .potentials import (PotentialSpec, ModelParams, gaussian_pair, delta_pair,
                         square_well, eval_potential, from_config, EPS_SUPPORT)
from .functionals import FunctionalSet, compute_functionals
from .perturbation import (EnergySeries, energy_series_1d, eval_pt4,
                           energy_2d_pt2, delta_coefficients)
from .resummation import (PadeModel, pade_relativistic, pade_nonrelativistic,
                          pole_free_condition, gaussian_region,
                          decay_constant_model)
from .dirac_solver import (SolverConfig, BoundStateSolution, NoBoundStateError,
                           solve_dirac_ground, solve_decoupled_cross_check,
                           fit_decay, scan_gamma)
from .nr_solver import NrSolution, solve_schrodinger_ground

__all__ = [
    "__version__",
    "PotentialSpec", "ModelParams", "gaussian_pair", "delta_pair",
    "square_well", "eval_potential", "from_config", "EPS_SUPPORT",
    "FunctionalSet", "compute_functionals",
    "EnergySeries", "energy_series_1d", "eval_pt4", "energy_2d_pt2",
    "delta_coefficients",
    "PadeModel", "pade_relativistic", "pade_nonrelativistic",
    "pole_free_condition", "gaussian_region", "decay_constant_model",
    "SolverConfig", "BoundStateSolution", "NoBoundStateError",
    "solve_dirac_ground", "solve_decoupled_cross_check", "fit_decay",
    "scan_gamma",
    "NrSolution", "solve_schrodinger_ground",
]

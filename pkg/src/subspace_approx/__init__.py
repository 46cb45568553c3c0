"""Rational approximation of 2-planes in R^4.

Exact heights and Plücker coordinates, graph charts, principal angles,
enumeration of rational planes by height, the determinantal surface of planes
meeting a given one, and experiment harnesses built on top of them.
"""
from .angles import Frame, intersects_nontrivially, orthonormalize, psi, psi_bruteforce
from .charts import (
    GraphChart,
    chart_of_subspace,
    chart_transition,
    in_delta_band,
    subspace_from_graph,
)
from .enumeration import ApproxRecord, best_approx, count_by_height, cumulative_count, enumerate_subspaces
from .experiments import ExperimentConfig, dirichlet_experiment, lower_bound_experiment
from .geometry import (
    MatrixPoint,
    XiEtaPoint,
    check_tube_inclusion,
    distance_to_surface,
    from_xi_eta,
    neighborhood_radius,
    to_xi_eta,
    tube_volume,
)
from .lattice import (
    RationalSubspace,
    SubspaceError,
    height_sq,
    pluecker,
    saturate,
    subspace_from_pluecker,
)
from .series import OmegaFunction, SeriesVerdict, check_series

__version__ = "0.1.0"

__all__ = [
    "ApproxRecord",
    "ExperimentConfig",
    "Frame",
    "GraphChart",
    "MatrixPoint",
    "OmegaFunction",
    "RationalSubspace",
    "SeriesVerdict",
    "SubspaceError",
    "XiEtaPoint",
    "best_approx",
    "chart_of_subspace",
    "chart_transition",
    "check_series",
    "check_tube_inclusion",
    "count_by_height",
    "cumulative_count",
    "dirichlet_experiment",
    "distance_to_surface",
    "enumerate_subspaces",
    "from_xi_eta",
    "height_sq",
    "in_delta_band",
    "intersects_nontrivially",
    "lower_bound_experiment",
    "neighborhood_radius",
    "orthonormalize",
    "pluecker",
    "psi",
    "psi_bruteforce",
    "saturate",
    "subspace_from_graph",
    "subspace_from_pluecker",
    "to_xi_eta",
    "tube_volume",
]

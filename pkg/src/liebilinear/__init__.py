"""Controllability of bilinear systems induced by matrix Lie group actions.

For a proper action (SO(n) on the sphere, SE(n) on R^n, any compact group)
the rank of the generated Lie algebra is constant along orbits, so a single
generic point decides controllability, and the controllable set through a
point is its orbit.
"""

__version__ = "0.1.0"

from .affine import AffineGenerator, affine_eval, embed, rank_at_affine, unembed
from .algebra import LieBasis, ambient_algebra_dim, bracket, lie_closure, subspace_rank
from .errors import (
    AssumptionConflict,
    InputError,
    LieBilinearError,
    NumericalError,
    SamplingError,
    SaturationError,
)
from .graphcrit import EdgeSpec, components, is_connected, omega, system_from_edges
from .orbit import (
    estimate_local_dim,
    flow,
    orbit_dim_estimate,
    sample_orbit,
    verify_rank_constancy,
)
from .rankcond import AnalysisReport, analyze, check_group_larc, rank_at, required_rank
from .sim import ControlSchedule, Trajectory, run, step
from .system import GeneratorSet, StatePoint

__all__ = [
    "AffineGenerator",
    "AnalysisReport",
    "AssumptionConflict",
    "ControlSchedule",
    "EdgeSpec",
    "GeneratorSet",
    "InputError",
    "LieBasis",
    "LieBilinearError",
    "NumericalError",
    "SamplingError",
    "SaturationError",
    "StatePoint",
    "Trajectory",
    "affine_eval",
    "ambient_algebra_dim",
    "analyze",
    "bracket",
    "check_group_larc",
    "components",
    "embed",
    "estimate_local_dim",
    "flow",
    "is_connected",
    "lie_closure",
    "omega",
    "orbit_dim_estimate",
    "rank_at",
    "rank_at_affine",
    "required_rank",
    "run",
    "sample_orbit",
    "step",
    "subspace_rank",
    "system_from_edges",
    "unembed",
    "verify_rank_constancy",
]

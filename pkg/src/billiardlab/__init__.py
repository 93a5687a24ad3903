"""Numerical laboratory for N-periodic billiard trajectories in an
ellipse: orbit families, derived polygons, and an 82-entry invariant
catalog with a sweep/verification harness."""

from .geometry import DegenerateGeometryError, Ellipse, Line
from .orbit import (
    BilliardConfig,
    OrbitFamily,
    OrbitSample,
    SolverError,
    build_family,
    caustic_by_closure,
    caustic_from_segment,
    orbit_at,
    solve_seed_orbit,
)
from .catalog import (
    AnchorPoint,
    EvaluationContext,
    applicability,
    closed_form_value,
    evaluate,
    list_invariants,
    list_variants,
    lookup,
    make_anchor,
)
from .sweep import SweepPlan, classify, negative_control, run_catalog, sweep_quantity

__version__ = "0.1.0"

__all__ = [
    "AnchorPoint",
    "BilliardConfig",
    "DegenerateGeometryError",
    "Ellipse",
    "EvaluationContext",
    "Line",
    "OrbitFamily",
    "OrbitSample",
    "SolverError",
    "SweepPlan",
    "applicability",
    "build_family",
    "caustic_by_closure",
    "caustic_from_segment",
    "classify",
    "closed_form_value",
    "evaluate",
    "list_invariants",
    "list_variants",
    "lookup",
    "make_anchor",
    "negative_control",
    "orbit_at",
    "run_catalog",
    "solve_seed_orbit",
    "sweep_quantity",
]

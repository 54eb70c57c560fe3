"""Heat dissipation and Landauer-type bounds for a spin-boson qubit."""

from ._heatbound import (
    BoundsEngine,
    DimensionError,
    DomainError,
    IntegrityError,
    QuadratureError,
    SolverError,
    TruncationError,
    bloch_disk_grid,
    entropic_bound,
    evolve,
    exact_modified_trace,
    landauer_terms,
    scaling_report,
    thermodynamic_bound,
    tighter_bound,
    uniform_grid,
    von_neumann_entropy,
)

__all__ = [
    "BoundsEngine",
    "DimensionError",
    "DomainError",
    "IntegrityError",
    "QuadratureError",
    "SolverError",
    "TruncationError",
    "bloch_disk_grid",
    "entropic_bound",
    "evolve",
    "exact_modified_trace",
    "landauer_terms",
    "scaling_report",
    "thermodynamic_bound",
    "tighter_bound",
    "uniform_grid",
    "von_neumann_entropy",
]

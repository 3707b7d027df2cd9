"""Cluster seeds on Schubert and skew Schubert varieties of the Grassmannian.

Plabic graphs built from Young diagrams (or from skew Schubert data) give
labeled quivers whose Plücker labels form seeds; the seeds are checked
against exact samples of the varieties themselves.
"""

from .cluster import (
    Exploration,
    Quiver,
    Seed,
    explore,
    finite_type_crosscheck,
    mutate_quiver,
    mutate_seed,
    seed_from_graph,
)
from .errors import (
    ConstructionError,
    DegenerateSampleError,
    MoveNotApplicableError,
    NotBruhatComparableError,
    NotLengthAdditiveError,
    NotMaxCosetError,
    NotReducedError,
    PreconditionError,
    SeedError,
    VarietyMismatchError,
)
from .oracle import (
    PluckerVector,
    boundary_measurement,
    check_exchange_on_variety,
    check_plucker_relations,
    pluckers,
    richardson_sample,
    schubert_sample,
)
from .plabic import PlabicGraph, graph_from_shape, skew_graph
from .shapes import Shape, classify, derived_shape, partne, partsw, shape_of
from .weyl import DecoratedPermutation, Permutation, bruhat_leq, length, ppermsw

__all__ = [
    "Permutation", "DecoratedPermutation", "length", "bruhat_leq", "ppermsw",
    "Shape", "partsw", "partne", "shape_of", "derived_shape", "classify",
    "PlabicGraph", "graph_from_shape", "skew_graph",
    "Quiver", "Seed", "mutate_quiver", "mutate_seed", "explore", "Exploration",
    "seed_from_graph", "finite_type_crosscheck",
    "PluckerVector", "pluckers", "schubert_sample", "richardson_sample",
    "boundary_measurement", "check_plucker_relations", "check_exchange_on_variety",
    "SeedError", "PreconditionError", "NotLengthAdditiveError", "NotMaxCosetError",
    "NotBruhatComparableError", "MoveNotApplicableError", "NotReducedError",
    "ConstructionError", "DegenerateSampleError", "VarietyMismatchError",
]

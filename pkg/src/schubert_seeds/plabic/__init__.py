"""Plabic graphs: trips, target labels, dual quivers, moves and constructions."""

from .construct import (
    check_skew_data,
    example_432_graph,
    graph_from_decorated,
    graph_from_shape,
    le_fillings,
    lex_min_basis,
    lollipop_graph,
    parallel_edge_fixture,
    skew_graph,
    skew_shape,
)
from .graph import PlabicGraph, Trip, from_coordinates
from .moves import (
    INCONCLUSIVE,
    M1,
    M2,
    M3,
    NOT_REDUCED,
    REDUCED,
    MoveClass,
    ParallelEdges,
    apply_move,
    find_parallel_edge_reduction,
    is_normalized,
    is_reduced,
    move_class,
    normalize,
    square_faces,
    square_move_mutates_quiver,
)

__all__ = [
    "PlabicGraph", "Trip", "from_coordinates",
    "graph_from_shape", "graph_from_decorated", "le_fillings", "lex_min_basis", "skew_graph", "skew_shape", "check_skew_data",
    "lollipop_graph", "example_432_graph", "parallel_edge_fixture",
    "M1", "M2", "M3", "apply_move", "normalize", "is_normalized", "square_faces",
    "square_move_mutates_quiver",
    "find_parallel_edge_reduction", "ParallelEdges", "is_reduced", "move_class", "MoveClass",
    "REDUCED", "NOT_REDUCED", "INCONCLUSIVE",
]

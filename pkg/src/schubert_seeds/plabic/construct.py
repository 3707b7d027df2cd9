"""
Explicit plabic graphs: the box-lattice graph of a filled Young diagram,
graphs for arbitrary decorated permutations and skew Schubert data, and
small fixtures.
"""

from __future__ import annotations

from ..errors import (
    ConstructionError,
    NotBruhatComparableError,
    NotMaxCosetError,
    PreconditionError,
)
from ..shapes import Shape, image_of_initial_segment, shape_of
from ..weyl import (
    BLACK,
    WHITE,
    DecoratedPermutation,
    Permutation,
    bruhat_leq,
    coset_rep_kind,
    length,
    length_additive_factor,
    ppermsw,
)
from .graph import PlabicGraph, from_coordinates
from .moves import normalize

_EPS = 0.15


def _boundary_points(shape: Shape):
    """Step midpoints of the boundary path, plus row -> label and column -> label."""
    n, k = shape.n, shape.k
    coords, row_step, col_step = {}, {}, {}
    x, y, label = n - k, 0, 1
    for i in range(1, k + 1):
        while x > shape.row(i):
            coords[label] = (x - 0.5, y)
            col_step[x] = label
            x -= 1
            label += 1
        coords[label] = (x, y - 0.5)
        row_step[i] = label
        y -= 1
        label += 1
    while x > 0:
        coords[label] = (x - 0.5, y)
        col_step[x] = label
        x -= 1
        label += 1
    return coords, row_step, col_step


def _box_lattice(shape: Shape, filled=None) -> PlabicGraph:
    """Unnormalized graph of a filling of ``shape`` (all boxes when ``filled`` is None).

    Wires run east along rows and south along columns from every filled box
    to the next filled box or to the boundary path; empty boxes let a wire
    pass straight through.  A filled box reached by wires from both west and
    north is split into a black vertex (north/east ports) and a white vertex
    (west/south ports); one reached only from the north is black, one
    reached only from the west is white.  Rows and columns without a filled
    box end in white and black lollipops respectively.
    """
    n, k = shape.n, shape.k
    boxes = set(shape.boxes()) if filled is None else set(filled)
    coords, row_step, col_step = _boundary_points(shape)
    colors: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    next_id = [n]

    def vertex(color, pt):
        next_id[0] += 1
        colors[next_id[0]] = color
        coords[next_id[0]] = pt
        return next_id[0]

    ports: dict[tuple[int, int], dict[str, int]] = {}
    for i, j in sorted(boxes):
        cx, cy = j - 0.5, -i + 0.5
        west = any((i, c) in boxes for c in range(1, j))
        north = any((r, j) in boxes for r in range(1, i))
        if west and north:
            ne = vertex(BLACK, (cx + _EPS, cy + _EPS))
            sw = vertex(WHITE, (cx - _EPS, cy - _EPS))
            edges.append((ne, sw))
            ports[(i, j)] = {"N": ne, "E": ne, "W": sw, "S": sw}
        else:
            v = vertex(BLACK if north else WHITE, (cx, cy))
            ports[(i, j)] = {"N": v, "E": v, "W": v, "S": v}
    for (i, j), p in ports.items():
        east = next((ports[(i, c)]["W"] for c in range(j + 1, shape.row(i) + 1)
                     if (i, c) in ports), row_step[i])
        south = next((ports[(r, j)]["N"] for r in range(i + 1, k + 1)
                      if (r, j) in ports), col_step[j])
        edges += [(p["E"], east), (p["S"], south)]
    for i in range(1, k + 1):
        if not any(b[0] == i for b in boxes):
            x, y = coords[row_step[i]]
            edges.append((vertex(WHITE, (x - 0.3, y)), row_step[i]))
    for j in range(1, n - k + 1):
        if not any(b[1] == j for b in boxes):
            x, y = coords[col_step[j]]
            edges.append((vertex(BLACK, (x, y - 0.3)), col_step[j]))
    return from_coordinates(n, colors, edges, coords)


def graph_from_shape(shape: Shape) -> PlabicGraph:
    """Reduced plabic graph for the Schubert variety ``X_shape``.

    Postconditions (checked): trip permutation equals ``ppermsw(shape)``,
    ``|shape| + 1`` faces, bipartite, Euler characteristic of a disk.
    """
    g = normalize(_box_lattice(shape))
    g = PlabicGraph(g.n, g.colors, g.edges, g.rotations, name=f"X{shape.rows}")
    expected = ppermsw(shape)
    if g.trip_permutation() != expected:
        raise ConstructionError(
            f"trip permutation {g.trip_permutation()} != {expected} for {shape}")
    if g.num_faces != shape.size + 1:
        raise ConstructionError(f"{g.num_faces} faces for {shape}, expected {shape.size + 1}")
    g.check_invariants()
    return g


def lollipop_graph(colors: list[str]) -> PlabicGraph:
    """One lollipop per boundary vertex, colors listed by position."""
    n = len(colors)
    return PlabicGraph(
        n,
        {n + i: c for i, c in enumerate(colors, start=1)},
        {i: (i, n + i) for i in range(1, n + 1)},
        {n + i: (i,) for i in range(1, n + 1)},
    )


def check_skew_data(v: Permutation, x: Permutation, k: int) -> Permutation:
    """Validate skew Schubert data and return ``w = x v``.

    Checked in order: length additivity, ``v`` maximal in its coset
    ``W_K v``, ``v <= w`` in Bruhat order.  Maximality in ``W_K v`` means the
    blocks ``v^{-1}(1..k)`` and ``v^{-1}(k+1..n)`` are decreasing, i.e.
    ``coset_rep_kind(v^{-1}, k) == "max"``.
    """
    if v.n != x.n:
        raise PreconditionError("v and x have different sizes")
    w = x * v
    length_additive_factor(w, v)
    if coset_rep_kind(v.inverse(), k) != "max":
        raise NotMaxCosetError(
            f"v={v} is not a maximal-length representative of its coset W_K v for k={k}")
    if not bruhat_leq(v, w):
        raise NotBruhatComparableError(f"v={v} is not below w={w} in Bruhat order")
    return w


def le_fillings(shape: Shape):
    """Fillings of ``shape`` in which no empty box has a filled box both to its
    west and to its north, in row-major search order."""
    boxes = sorted(shape.boxes())

    def rec(idx, filled):
        if idx == len(boxes):
            yield frozenset(filled)
            return
        i, j = boxes[idx]
        filled.add((i, j))
        yield from rec(idx + 1, filled)
        filled.discard((i, j))
        west = any((i, c) in filled for c in range(1, j))
        north = any((r, j) in filled for r in range(1, i))
        if not (west and north):
            yield from rec(idx + 1, filled)

    yield from rec(0, set())


def lex_min_basis(p: DecoratedPermutation) -> tuple[int, ...]:
    """Positions ``i`` with ``p^{-1}(i) > i``, together with the white fixed points."""
    inv = p.perm.inverse()
    return tuple(i for i in range(1, p.n + 1)
                 if inv(i) > i or (inv(i) == i and p.fixed_point_colors[i] == WHITE))


def graph_from_decorated(p: DecoratedPermutation) -> PlabicGraph:
    """Reduced plabic graph whose trip permutation on positions is ``p``.

    The diagram is ``shape_of(lex_min_basis(p))``; the filling is found by
    searching the admissible fillings for one whose graph has trip
    permutation ``p``.  Checked: trip permutation, one face per filled box
    plus one.
    """
    n = p.n
    basis = lex_min_basis(p)
    shape = shape_of(basis, len(basis), n)
    for filled in le_fillings(shape):
        g = _box_lattice(shape, filled)
        if g.trip_permutation_positions() != p:
            continue
        g = normalize(g)
        if g.num_faces != len(filled) + 1:
            raise ConstructionError(f"{g.num_faces} faces for {len(filled)} filled boxes")
        g.check_invariants()
        return g
    raise ConstructionError(f"no filling of {shape} has trip permutation {p}")


def skew_graph(v: Permutation, x: Permutation, k: int) -> PlabicGraph:
    """Generalized plabic graph for the skew Schubert datum ``(v, w = x v)``.

    Builds a reduced graph with trip permutation ``x^{-1}`` whose lollipops
    are white exactly in ``[k]`` and relabels boundary position ``i`` by
    ``v^{-1}(i)``.  The graph has ``l(x) + 1`` faces.
    """
    check_skew_data(v, x, k)
    n = v.n
    xinv = x.inverse()
    colors = {i: (WHITE if i <= k else BLACK) for i in xinv.fixed_points()}
    g = graph_from_decorated(DecoratedPermutation(xinv, colors))
    if g.num_faces != length(x) + 1:
        raise ConstructionError(f"{g.num_faces} faces, expected l(x) + 1 = {length(x) + 1}")
    vinv = v.inverse()
    return PlabicGraph(g.n, g.colors, g.edges, g.rotations,
                       tuple(vinv(i) for i in range(1, n + 1)), name=f"skew v={v} x={x}")


def skew_shape(x: Permutation, k: int) -> Shape:
    """The diagram ``mu`` with ``partne(mu) = x[k]``."""
    n = x.n
    # partne(mu) = {n+1-s : s in partsw(mu)}
    return shape_of([n + 1 - t for t in image_of_initial_segment(x, k)], k, n)


def example_432_graph() -> PlabicGraph:
    """The plabic graph for ``(4,3,2)`` in ``Gr(3,7)`` drawn from coordinates."""
    coords = {
        1: (-12, 48), 2: (42, 48), 3: (75, 0), 4: (59, -46), 5: (15, -65),
        6: (-29, -46), 7: (-45, 0),
        8: (15, 30), 9: (-18, 0), 10: (15, 0), 11: (47, 0),
        12: (-1, -20), 13: (31, -20), 14: (-25, -25), 15: (7, -46),
    }
    colors = {8: WHITE, 9: BLACK, 10: BLACK, 11: BLACK,
              12: WHITE, 13: WHITE, 14: WHITE, 15: BLACK}
    edges = [(8, 1), (8, 2), (8, 9), (8, 11), (8, 10), (9, 7), (9, 12), (9, 14),
             (10, 12), (10, 13), (11, 3), (11, 13), (13, 4), (14, 6), (14, 15),
             (15, 12), (15, 5)]
    return from_coordinates(7, colors, edges, coords)


def parallel_edge_fixture() -> PlabicGraph:
    """Gr(1,2)-style chord with a doubled edge between a white and a black
    trivalent vertex: 1 - w = b - 2."""
    return PlabicGraph(
        2,
        {3: WHITE, 4: BLACK},
        {0: (1, 3), 1: (3, 4), 2: (3, 4), 3: (4, 2)},
        {3: (0, 1, 2), 4: (3, 2, 1)},
    )


def square_fixture() -> PlabicGraph:
    """Top cell of ``Gr(2,4)``: one square face, four trivalent vertices."""
    return graph_from_shape(Shape.rectangle(2, 4))

"""
Local moves on plabic graphs and move-equivalence search.

Graphs are kept in a normal form: bipartite, with no degree-2 internal
vertex except one joining two boundary vertices.  Normalizing only applies
(M2)/(M3), so it never changes the trip permutation.  Square moves are
addressed by face ids of the normalized graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from ..errors import MoveNotApplicableError, PreconditionError
from ..weyl import BLACK, WHITE
from .graph import PlabicGraph


def _flip(c: str) -> str:
    return WHITE if c == BLACK else BLACK


class _Editable:
    """Mutable working copy of a graph used while rewriting it."""

    def __init__(self, g: PlabicGraph):
        self.n = g.n
        self.labels = g.boundary_labels
        self.colors = dict(g.colors)
        self.edges = {e: list(uv) for e, uv in g.edges.items()}
        self.rot = {v: list(r) for v, r in g.rotations.items()}
        self.next_v = max(self.colors, default=self.n) + 1
        self.next_e = max(self.edges, default=-1) + 1

    def freeze(self) -> PlabicGraph:
        return PlabicGraph(self.n, self.colors,
                           {e: tuple(uv) for e, uv in self.edges.items()},
                           {v: tuple(r) for v, r in self.rot.items()}, self.labels)

    def other(self, e: int, u: int) -> int:
        a, b = self.edges[e]
        return b if u == a else a

    def new_vertex(self, color: str) -> int:
        v = self.next_v
        self.next_v += 1
        self.colors[v] = color
        self.rot[v] = []
        return v

    def new_edge(self, a: int, b: int) -> int:
        e = self.next_e
        self.next_e += 1
        self.edges[e] = [a, b]
        return e

    def replace_endpoint(self, e: int, old: int, new: int) -> None:
        uv = self.edges[e]
        uv[uv.index(old)] = new

    def splice(self, v: int) -> None:
        """Delete degree-2 vertex ``v``, joining its two edges into one."""
        e1, e2 = self.rot[v]
        y = self.other(e2, v)
        self.replace_endpoint(e1, v, y)
        if y > self.n:
            r = self.rot[y]
            r[r.index(e2)] = e1
        del self.edges[e2]
        del self.rot[v]
        del self.colors[v]

    def contract(self, e: int) -> int:
        """Contract internal edge ``e``; the merged vertex keeps the first endpoint."""
        a, c = self.edges[e]
        ra, rc = self.rot[a], self.rot[c]
        ia, ic = ra.index(e), rc.index(e)
        merged = ra[ia + 1:] + ra[:ia] + rc[ic + 1:] + rc[:ic]
        for f in rc:
            if f == e:
                continue
            if c in self.edges[f] and a in self.edges[f]:
                raise PreconditionError("contraction would create a loop")
            self.replace_endpoint(f, c, a)
        self.rot[a] = merged
        del self.rot[c]
        del self.colors[c]
        del self.edges[e]
        return a

    def expand(self, v: int, keep: list[int]) -> tuple[int, int]:
        """Split ``v``: it keeps the cyclic interval ``keep`` of its rotation;
        the remaining edges move to a new vertex of the same color, joined to
        ``v`` through a new degree-2 vertex of the opposite color."""
        rot = self.rot[v]
        rest = [f for f in rot if f not in keep]
        if not keep or not rest:
            raise MoveNotApplicableError("expansion needs a proper nonempty split")
        mid = self.new_vertex(_flip(self.colors[v]))
        twin = self.new_vertex(self.colors[v])
        e_v = self.new_edge(v, mid)
        e_t = self.new_edge(mid, twin)
        start = rot.index(keep[0])
        ordered = rot[start:] + rot[:start]
        self.rot[v] = ordered[:len(keep)] + [e_v]
        self.rot[mid] = [e_v, e_t]
        self.rot[twin] = [e_t] + ordered[len(keep):]
        for f in rest:
            self.replace_endpoint(f, v, twin)
        return mid, twin

    def normalize(self) -> None:
        changed = True
        while changed:
            changed = False
            for v in sorted(self.colors):
                if v not in self.rot or len(self.rot[v]) != 2:
                    continue
                e1, e2 = self.rot[v]
                x, y = self.other(e1, v), self.other(e2, v)
                if (x <= self.n and y <= self.n) or x == y:
                    continue
                if x <= self.n:
                    self.rot[v] = [e2, e1]
                self.splice(v)
                changed = True
            for e in sorted(self.edges):
                if e not in self.edges:
                    continue
                a, c = self.edges[e]
                if a > self.n and c > self.n and a != c and self.colors[a] == self.colors[c]:
                    self.contract(e)
                    changed = True


def normalize(g: PlabicGraph) -> PlabicGraph:
    """Bipartite normal form without removable degree-2 vertices, canonically numbered."""
    ed = _Editable(g)
    ed.normalize()
    return ed.freeze().canonical()


def is_normalized(g: PlabicGraph) -> bool:
    if not g.is_bipartite():
        return False
    for v, r in g.rotations.items():
        if len(r) == 2:
            x, y = (g.other(e, v) for e in r)
            if not (x <= g.n and y <= g.n):
                return False
    return True


# ----------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class M1:
    """Square move at a face id of the normalized graph."""
    face: int


@dataclass(frozen=True)
class M2:
    """Contract a degree-2 vertex (``keep is None``) or expand ``vertex``
    keeping the cyclic run of edges ``keep``."""
    vertex: int
    keep: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class M3:
    """Insert degree-2 vertices on ``edge`` or remove degree-2 ``vertex``."""
    edge: Optional[int] = None
    vertex: Optional[int] = None


Move = Union[M1, M2, M3]


def square_faces(g: PlabicGraph) -> list[int]:
    """Faces of a normalized graph where a square move applies."""
    return [f for f in range(g.num_faces) if _square_problem(g, f) is None]


def _square_problem(g: PlabicGraph, f: int) -> Optional[str]:
    if not 0 <= f < g.num_faces:
        return f"face {f} does not exist"
    if g.is_frozen_face(f):
        return f"face {f} touches the boundary"
    darts = g.face_darts(f)
    if len(darts) != 4:
        return f"face {f} has {len(darts)} sides, not 4"
    verts = [u for _, u in darts]
    if len(set(verts)) != 4 or len({e for e, _ in darts}) != 4:
        return f"face {f} is not bounded by a simple 4-cycle"
    if any(g.degree(v) < 3 for v in verts):
        return f"face {f} has a vertex of degree < 3"
    cols = [g.colors[v] for v in verts]
    if any(cols[i] == cols[(i + 1) % 4] for i in range(4)):
        return f"face {f} does not alternate colors"
    return None


def apply_move(g: PlabicGraph, move: Move) -> PlabicGraph:
    """Apply one local move; the result is canonically numbered.

    ``M1`` normalizes first (face ids refer to ``normalize(g)``) and returns
    a normalized graph; ``M2``/``M3`` act literally on ``g``.
    """
    if isinstance(move, M1):
        return _square_move(normalize(g) if not is_normalized(g) else g, move.face)
    if isinstance(move, M2):
        return _m2(g, move)
    if isinstance(move, M3):
        return _m3(g, move)
    raise TypeError(f"unknown move {move!r}")


def _square_move(g: PlabicGraph, f: int) -> PlabicGraph:
    problem = _square_problem(g, f)
    if problem:
        raise MoveNotApplicableError(f"square move not applicable: {problem}")
    ed = _Editable(g)
    darts = g.face_darts(f)
    for idx, (e_out, v) in enumerate(darts):
        e_in = darts[idx - 1][0]
        if len(ed.rot[v]) > 3:
            ed.expand(v, [e_in, e_out])
    for _, v in darts:
        ed.colors[v] = _flip(ed.colors[v])
    ed.normalize()
    return ed.freeze().canonical()


def _m2(g: PlabicGraph, move: M2) -> PlabicGraph:
    v = move.vertex
    if v not in g.colors:
        raise MoveNotApplicableError(f"{v} is not an internal vertex")
    ed = _Editable(g)
    if move.keep is None:
        if g.degree(v) != 2:
            raise MoveNotApplicableError(f"vertex {v} has degree {g.degree(v)}, not 2")
        x, y = g.neighbors(v)
        if x <= g.n or y <= g.n:
            raise MoveNotApplicableError(f"vertex {v} is adjacent to the boundary")
        if x == y:
            raise MoveNotApplicableError(f"vertex {v} has a doubled neighbor")
        if g.colors[x] != g.colors[y]:
            raise MoveNotApplicableError("neighbors of a contracted vertex must share a color")
        e1 = ed.rot[v][0]
        ed.splice(v)
        ed.contract(e1)
    else:
        rot = list(g.rotations[v])
        keep = list(move.keep)
        if not set(keep) <= set(rot):
            raise MoveNotApplicableError("edges to keep are not incident to the vertex")
        start = rot.index(keep[0])
        if rot[start:] + rot[:start] != keep + [e for e in rot[start:] + rot[:start] if e not in keep]:
            raise MoveNotApplicableError("edges to keep must be a clockwise run")
        ed.expand(v, keep)
    return ed.freeze().canonical()


def _m3(g: PlabicGraph, move: M3) -> PlabicGraph:
    ed = _Editable(g)
    if move.edge is not None:
        e = move.edge
        if e not in g.edges:
            raise MoveNotApplicableError(f"no edge {e}")
        a, b = g.edges[e]
        if a <= g.n or b <= g.n:
            inner = b if a <= g.n else a
            _subdivide(ed, e, [_flip(g.colors[inner])], inner)
        else:
            _subdivide(ed, e, [_flip(g.colors[b]), g.colors[b]], b)
        return ed.freeze().canonical()
    v = move.vertex
    if v not in g.colors or g.degree(v) != 2:
        raise MoveNotApplicableError(f"{v} is not a degree-2 internal vertex")
    x, y = g.neighbors(v)
    if x <= g.n or y <= g.n:
        if x <= g.n and y <= g.n:
            raise MoveNotApplicableError("removing the vertex would join two boundary vertices")
        if x <= g.n:
            ed.rot[v] = ed.rot[v][::-1]
        ed.splice(v)
        return ed.freeze().canonical()
    for e in g.rotations[v]:
        w = g.other(e, v)
        if g.degree(w) == 2:
            ed.splice(v)
            ed.splice(w)
            out = ed.freeze()
            if not out.is_bipartite() and g.is_bipartite():
                raise MoveNotApplicableError("removal would break bipartiteness")
            return out.canonical()
    raise MoveNotApplicableError(
        f"removing {v} alone would join two vertices of the same color")


def _subdivide(ed: _Editable, e: int, colors: list[str], toward: int) -> None:
    """Insert new vertices with the given colors along ``e``, listed from the
    end opposite ``toward``."""
    a, b = ed.edges[e]
    start = a if b == toward else b
    prev, prev_edge = start, e
    for c in colors:
        v = ed.new_vertex(c)
        ed.replace_endpoint(prev_edge, toward, v)
        nxt = ed.new_edge(v, toward)
        ed.rot[v] = [prev_edge, nxt]
        if toward > ed.n:
            r = ed.rot[toward]
            r[r.index(prev_edge)] = nxt
        prev, prev_edge = v, nxt


# ----------------------------------------------------------------------
# reduction


@dataclass(frozen=True)
class ParallelEdges:
    """Two vertices of different colors joined by a pair of parallel edges."""
    u: int
    v: int
    edges: tuple[int, int]
    needs_expansion: bool


def find_parallel_edge_reduction(g: PlabicGraph) -> Optional[ParallelEdges]:
    """Locate a place where (R1) applies, directly or after expanding vertices.

    Returns ``None`` when there is none.
    """
    pairs: dict[tuple[int, int], list[int]] = {}
    for e, (a, b) in sorted(g.edges.items()):
        if a > g.n and b > g.n:
            pairs.setdefault((min(a, b), max(a, b)), []).append(e)
    best = None
    for (a, b), es in sorted(pairs.items()):
        if len(es) < 2 or g.colors[a] == g.colors[b]:
            continue
        if g.degree(a) == 3 and g.degree(b) == 3:
            return ParallelEdges(a, b, (es[0], es[1]), False)
        # a bigon face between them can be isolated by (M2) expansions
        for f in range(g.num_faces):
            darts = g.face_darts(f)
            if len(darts) == 2 and {u for _, u in darts} == {a, b}:
                best = best or ParallelEdges(a, b, tuple(e for e, _ in darts), True)
    return best


@dataclass
class MoveClass:
    graphs: list[PlabicGraph]
    exhausted: bool

    def __len__(self):
        return len(self.graphs)


def move_class(g: PlabicGraph, bound: int = 10_000) -> MoveClass:
    """Graphs reachable by square moves from ``normalize(g)``, up to isomorphism.

    (M2)/(M3) are applied silently through normalization.
    """
    start = normalize(g)
    seen = {start.canonical_key: start}
    queue = deque([start])
    while queue:
        h = queue.popleft()
        for f in square_faces(h):
            h2 = _square_move(h, f)
            key = h2.canonical_key
            if key in seen:
                continue
            if len(seen) >= bound:
                return MoveClass(list(seen.values()), False)
            seen[key] = h2
            queue.append(h2)
    return MoveClass(list(seen.values()), True)


REDUCED = "reduced"
NOT_REDUCED = "not_reduced"
INCONCLUSIVE = "inconclusive"


def is_reduced(g: PlabicGraph, search_bound: int = 10_000) -> str:
    """Search the move class for a graph where (R1) applies."""
    start = normalize(g)
    seen = {start.canonical_key}
    queue = deque([start])
    while queue:
        h = queue.popleft()
        if find_parallel_edge_reduction(h) is not None:
            return NOT_REDUCED
        for f in square_faces(h):
            h2 = _square_move(h, f)
            if h2.canonical_key in seen:
                continue
            if len(seen) >= search_bound:
                return INCONCLUSIVE
            seen.add(h2.canonical_key)
            queue.append(h2)
    return REDUCED


def square_move_mutates_quiver(g: PlabicGraph, f: int) -> bool:
    """Does the square move at ``f`` act on the dual quiver as mutation at ``f``?

    Faces of ``g`` and of the moved graph are matched through their target
    labels; the one label that changes is matched to the new one.
    """
    from ..cluster import mutate_quiver

    g = normalize(g) if not is_normalized(g) else g
    old = g.target_labels[f]
    moved = apply_move(g, M1(f))
    fresh = set(moved.target_labels.values()) - set(g.target_labels.values())
    if len(fresh) != 1:
        return False
    (new,) = fresh
    names = {lab: lab for lab in g.target_labels.values()}
    names[old] = new
    expected = mutate_quiver(g.labeled_quiver(), old).relabel(names)
    return expected == moved.labeled_quiver()

"""
Plabic graphs stored as rotation systems.

Boundary vertices are the positions ``1..n`` (clockwise around the disk);
internal vertices are integers ``> n``.  ``rotations[v]`` lists the edge ids
at an internal vertex in clockwise order.

The disk boundary is modelled by ``n`` virtual arcs, arc ``-i`` joining
position ``i`` to position ``i+1``.  At a boundary vertex the clockwise order
is ``(arc -i, leg, arc -(i-1))``.  A dart ``(e, u)`` is edge ``e`` traversed
away from ``u``; faces are orbits of darts under "take the next edge
clockwise at the head", i.e. each orbit walks a face keeping it on the left.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

from ..errors import NotReducedError, PreconditionError
from ..weyl import BLACK, WHITE, COLORS, DecoratedPermutation, Permutation

Dart = tuple[int, int]
Label = tuple[int, ...]


@dataclass(frozen=True)
class Trip:
    start: int
    end: int
    darts: tuple[Dart, ...]
    left_faces: Optional[frozenset[int]]  # None if the trip does not split the disk

    @property
    def is_lollipop(self) -> bool:
        return len(self.darts) == 2 and self.start == self.end


@dataclass(frozen=True, eq=False)
class PlabicGraph:
    n: int
    colors: Mapping[int, str]
    edges: Mapping[int, tuple[int, int]]
    rotations: Mapping[int, tuple[int, ...]]
    boundary_labels: tuple[int, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 2:
            raise PreconditionError("need at least two boundary vertices")
        labels = tuple(self.boundary_labels) or tuple(range(1, self.n + 1))
        if sorted(labels) != list(range(1, self.n + 1)):
            raise PreconditionError(f"boundary labels {labels} are not a permutation of [n]")
        object.__setattr__(self, "boundary_labels", labels)
        object.__setattr__(self, "colors", dict(self.colors))
        object.__setattr__(self, "edges", {e: tuple(uv) for e, uv in self.edges.items()})
        object.__setattr__(self, "rotations", {v: tuple(r) for v, r in self.rotations.items()})
        self._check_structure()

    # ------------------------------------------------------------------
    # structure

    def _check_structure(self) -> None:
        n = self.n
        for v, c in self.colors.items():
            if v <= n:
                raise PreconditionError(f"internal vertex id {v} collides with boundary")
            if c not in COLORS:
                raise PreconditionError(f"vertex {v} has unknown color {c!r}")
        if set(self.rotations) != set(self.colors):
            raise PreconditionError("rotations must cover exactly the internal vertices")
        incidence: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
        incidence.update({v: [] for v in self.colors})
        for e, (a, b) in self.edges.items():
            if e < 0:
                raise PreconditionError("edge ids must be non-negative")
            if a == b:
                raise PreconditionError(f"edge {e} is a loop")
            for x in (a, b):
                if x not in incidence:
                    raise PreconditionError(f"edge {e} has unknown endpoint {x}")
                incidence[x].append(e)
            if a <= n and b <= n:
                raise PreconditionError(f"edge {e} joins two boundary vertices")
        for i in range(1, n + 1):
            if len(incidence[i]) != 1:
                raise PreconditionError(f"boundary vertex {i} must have exactly one edge")
        for v, rot in self.rotations.items():
            if sorted(rot) != sorted(incidence[v]) or len(set(rot)) != len(rot):
                raise PreconditionError(f"rotation at {v} does not match its edges")
            if not rot:
                raise PreconditionError(f"internal vertex {v} is isolated")

    @cached_property
    def legs(self) -> dict[int, int]:
        """Edge incident to each boundary position."""
        out = {}
        for e, (a, b) in self.edges.items():
            for x in (a, b):
                if x <= self.n:
                    out[x] = e
        return out

    def is_boundary(self, v: int) -> bool:
        return v <= self.n

    def endpoints(self, e: int) -> tuple[int, int]:
        if e < 0:
            i = -e
            return (i, i % self.n + 1)
        return self.edges[e]

    def other(self, e: int, u: int) -> int:
        a, b = self.endpoints(e)
        if u == a:
            return b
        if u == b:
            return a
        raise KeyError(f"{u} is not an endpoint of edge {e}")

    def rotation(self, v: int) -> tuple[int, ...]:
        if v <= self.n:
            prev = v - 1 if v > 1 else self.n
            return (-v, self.legs[v], -prev)
        return self.rotations[v]

    def degree(self, v: int) -> int:
        return 1 if v <= self.n else len(self.rotations[v])

    def cw_next(self, v: int, e: int) -> int:
        rot = self.rotation(v)
        return rot[(rot.index(e) + 1) % len(rot)]

    def ccw_next(self, v: int, e: int) -> int:
        rot = self.rotation(v)
        return rot[(rot.index(e) - 1) % len(rot)]

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.rotation(v) if e >= 0]

    @property
    def internal_vertices(self) -> list[int]:
        return sorted(self.colors)

    def is_bipartite(self) -> bool:
        return all(
            self.colors[a] != self.colors[b]
            for a, b in self.edges.values()
            if a > self.n and b > self.n
        )

    def is_leafless(self) -> bool:
        return all(
            len(rot) != 1 or self.other(rot[0], v) <= self.n
            for v, rot in self.rotations.items()
        )

    def lollipops(self) -> dict[int, str]:
        """Boundary position -> color of its lollipop."""
        out = {}
        for i, e in self.legs.items():
            v = self.other(e, i)
            if self.degree(v) == 1:
                out[i] = self.colors[v]
        return out

    # ------------------------------------------------------------------
    # faces

    @cached_property
    def _face_data(self) -> tuple[dict[Dart, int], list[list[Dart]]]:
        darts: list[Dart] = []
        for e in sorted(self.edges):
            a, b = self.edges[e]
            darts += [(e, a), (e, b)]
        for i in range(1, self.n + 1):
            darts += [(-i, i), (-i, i % self.n + 1)]
        owner: dict[Dart, int] = {}
        orbits: list[list[Dart]] = []
        outer_start = (-(self.n), self.n)  # arc n -> 1 runs clockwise, outside on its left
        for start in [outer_start] + sorted(darts):
            if start in owner:
                continue
            orbit = []
            d = start
            while d not in owner:
                owner[d] = len(orbits)
                orbit.append(d)
                d = self._next_left(d)
            if d != start:
                raise PreconditionError("rotation system does not close up into faces")
            orbits.append(orbit)
        # orbit 0 is the exterior of the disk; faces are renumbered from 0
        face_of = {d: i - 1 for d, i in owner.items()}
        return face_of, orbits[1:]

    def _next_left(self, d: Dart) -> Dart:
        e, u = d
        v = self.other(e, u)
        return (self.cw_next(v, e), v)

    def face_of(self, d: Dart) -> int:
        """Face on the left of dart ``d`` (``-1`` for the exterior)."""
        return self._face_data[0][d]

    @property
    def num_faces(self) -> int:
        return len(self._face_data[1])

    def face_darts(self, f: int) -> list[Dart]:
        return self._face_data[1][f]

    def face_vertices(self, f: int) -> list[int]:
        return [u for _, u in self.face_darts(f)]

    def is_frozen_face(self, f: int) -> bool:
        return any(e < 0 for e, _ in self.face_darts(f))

    def euler_ok(self) -> bool:
        v = self.n + len(self.colors)
        e = len(self.edges) + self.n
        return v - e + (self.num_faces + 1) == 2

    def check_invariants(self) -> None:
        """Raise if any plabic graph invariant fails."""
        if not self.is_bipartite():
            raise PreconditionError("adjacent internal vertices share a color")
        if not self.is_leafless():
            raise PreconditionError("internal leaf not adjacent to the boundary")
        if not self.euler_ok():
            raise PreconditionError("Euler check failed: not planar or has isolated components")

    # ------------------------------------------------------------------
    # trips and labels

    def trip(self, i: int) -> Trip:
        """Follow the rules of the road from boundary position ``i``.

        At a black vertex the trip takes the next edge counterclockwise from
        the one it arrived on (a maximal right turn); at a white vertex the
        next edge clockwise (a maximal left turn).
        """
        if not 1 <= i <= self.n:
            raise PreconditionError(f"{i} is not a boundary position")
        e, u = self.legs[i], i
        darts = [(e, u)]
        limit = 2 * len(self.edges) + 2
        while True:
            v = self.other(e, u)
            if v <= self.n:
                break
            if len(darts) > limit:
                raise PreconditionError(f"trip from {i} does not terminate")
            e = self.ccw_next(v, e) if self.colors[v] == BLACK else self.cw_next(v, e)
            u = v
            darts.append((e, u))
        left = None
        if v != i:
            try:
                left = self._left_region(darts)
            except NotReducedError:
                pass
        return Trip(i, v, tuple(darts), left)

    def _left_region(self, darts: list[Dart]) -> frozenset[int]:
        used = {e for e, _ in darts}
        left = {self.face_of(d) for d in darts}
        right = {self.face_of((e, self.other(e, u))) for e, u in darts}
        left.discard(-1)
        right.discard(-1)
        if left & right:
            raise NotReducedError("a face lies on both sides of a trip")
        reached = self._flood(left, used)
        if reached & self._flood(right, used):
            raise NotReducedError("a face lies on both sides of a trip")
        return frozenset(reached)

    def _flood(self, seeds: Iterable[int], blocked: set[int]) -> set[int]:
        adj = self._dual_adjacency
        seen = set(seeds)
        queue = deque(seen)
        while queue:
            f = queue.popleft()
            for e, g in adj[f]:
                if e not in blocked and g not in seen:
                    seen.add(g)
                    queue.append(g)
        return seen

    @cached_property
    def _dual_adjacency(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {f: [] for f in range(self.num_faces)}
        for e, (a, b) in self.edges.items():
            f, g = self.face_of((e, a)), self.face_of((e, b))
            if f != g and f >= 0 and g >= 0:
                adj[f].append((e, g))
                adj[g].append((e, f))
        return adj

    @cached_property
    def trips(self) -> dict[int, Trip]:
        return {i: self.trip(i) for i in range(1, self.n + 1)}

    def trip_permutation(self) -> DecoratedPermutation:
        """Decorated trip permutation, expressed in boundary-label space."""
        lab = self.boundary_labels
        one_line = [0] * self.n
        for i, t in self.trips.items():
            one_line[lab[i - 1] - 1] = lab[t.end - 1]
        lolli = self.lollipops()
        colors = {}
        for i, t in self.trips.items():
            if t.end == i:
                if i not in lolli:
                    raise NotReducedError(f"trip from {i} returns without a lollipop")
                colors[lab[i - 1]] = lolli[i]
        return DecoratedPermutation(Permutation(one_line), colors)

    def trip_permutation_positions(self) -> DecoratedPermutation:
        """Decorated trip permutation on boundary positions (labels ignored)."""
        one_line = [self.trips[i].end for i in range(1, self.n + 1)]
        lolli = self.lollipops()
        colors = {i: lolli[i] for i in range(1, self.n + 1) if one_line[i - 1] == i}
        return DecoratedPermutation(Permutation(one_line), colors)

    @cached_property
    def target_labels(self) -> dict[int, Label]:
        """Face id -> sorted tuple of boundary labels (the target labeling)."""
        sets: dict[int, set[int]] = {f: set() for f in range(self.num_faces)}
        lolli = self.lollipops()
        for i, t in self.trips.items():
            lab = self.boundary_labels[t.end - 1]
            if t.end == i and i in lolli:
                targets = range(self.num_faces) if lolli[i] == WHITE else ()
            elif t.left_faces is None:
                raise NotReducedError(f"trip from {i} does not split the faces into two sides")
            else:
                targets = t.left_faces
            for f in targets:
                sets[f].add(lab)
        sizes = {len(s) for s in sets.values()}
        if len(sizes) > 1:
            raise NotReducedError(f"face labels have differing sizes {sorted(sizes)}")
        return {f: tuple(sorted(s)) for f, s in sets.items()}

    @property
    def k(self) -> int:
        labels = self.target_labels
        return len(labels[0]) if labels else 0

    def face_by_label(self, label: Iterable[int]) -> int:
        want = tuple(sorted(label))
        hits = [f for f, lab in self.target_labels.items() if lab == want]
        if len(hits) != 1:
            raise KeyError(f"label {want} found on {len(hits)} faces")
        return hits[0]

    def dual_quiver(self):
        """Quiver on faces; vertices keyed by face id."""
        from ..cluster import Quiver

        kinds = {f: ("frozen" if self.is_frozen_face(f) else "mutable")
                 for f in range(self.num_faces)}
        arrows: dict[tuple[int, int], int] = {}
        for e, (a, b) in self.edges.items():
            if a <= self.n or b <= self.n:
                continue
            white = a if self.colors[a] == WHITE else b
            black = self.other(e, white)
            left = self.face_of((e, white))
            right = self.face_of((e, black))
            if left == right:
                continue
            if kinds[left] == "frozen" and kinds[right] == "frozen":
                continue
            arrows[(right, left)] = arrows.get((right, left), 0) + 1
        return Quiver.from_arrow_counts(kinds, arrows)

    def labeled_quiver(self):
        """Dual quiver with vertices renamed by their target labels."""
        return self.dual_quiver().relabel(self.target_labels)

    # ------------------------------------------------------------------
    # transformations

    def relabel_boundary(self, labels: Iterable[int]) -> PlabicGraph:
        return PlabicGraph(self.n, self.colors, self.edges, self.rotations,
                           tuple(labels), self.name)

    def mirror(self) -> PlabicGraph:
        """Reflect the disk: reverse every rotation and send position ``i`` to ``n+1-i``."""
        n = self.n
        shift = max(self.colors, default=n)

        def m(v):
            return n + 1 - v if v <= n else v + shift

        return PlabicGraph(
            n,
            {m(v): c for v, c in self.colors.items()},
            {e: (m(a), m(b)) for e, (a, b) in self.edges.items()},
            {m(v): tuple(reversed(r)) for v, r in self.rotations.items()},
            tuple(self.boundary_labels[n - i] for i in range(1, n + 1)),
            self.name,
        ).canonical()

    @cached_property
    def canonical_key(self) -> tuple:
        """Isomorphism invariant preserving boundary positions, labels and orientation.

        Vertices and edges are renumbered by a traversal that starts from the
        boundary legs in position order and, at each newly reached vertex,
        reads its rotation starting from the edge it was reached by.
        """
        vmap, emap, order, entry = self._canonical_order()
        rows = []
        for v in order:
            if v <= self.n:
                continue
            rot = self.rotations[v]
            start = rot.index(entry[v])
            rows.append((self.colors[v], tuple(emap[rot[(start + t) % len(rot)]]
                                               for t in range(len(rot)))))
        ends = sorted((emap[e], tuple(sorted((vmap[a], vmap[b]))))
                      for e, (a, b) in self.edges.items())
        return (self.n, self.boundary_labels, tuple(rows), tuple(ends))

    def _canonical_order(self):
        n = self.n
        vmap = {i: i for i in range(1, n + 1)}
        emap: dict[int, int] = {}
        entry: dict[int, int] = {}
        order: list[int] = []
        queue: deque[int] = deque()
        next_v = n + 1
        for i in range(1, n + 1):
            e = self.legs[i]
            if e not in emap:
                emap[e] = len(emap)
            w = self.other(e, i)
            if w not in vmap:
                vmap[w] = next_v
                next_v += 1
                entry[w] = e
                queue.append(w)
            while queue:
                v = queue.popleft()
                order.append(v)
                rot = self.rotations[v]
                start = rot.index(entry[v])
                for t in range(len(rot)):
                    f = rot[(start + t) % len(rot)]
                    if f not in emap:
                        emap[f] = len(emap)
                    x = self.other(f, v)
                    if x not in vmap:
                        vmap[x] = next_v
                        next_v += 1
                        entry[x] = f
                        queue.append(x)
        if len(vmap) != n + len(self.colors):
            raise PreconditionError("graph has a component without boundary vertices")
        return vmap, emap, order, entry

    def canonical(self) -> PlabicGraph:
        """Isomorphic copy with vertices and edges renumbered canonically."""
        vmap, emap, _, _ = self._canonical_order()
        return PlabicGraph(
            self.n,
            {vmap[v]: c for v, c in self.colors.items()},
            {emap[e]: (vmap[a], vmap[b]) for e, (a, b) in self.edges.items()},
            {vmap[v]: tuple(emap[e] for e in r) for v, r in self.rotations.items()},
            self.boundary_labels,
            self.name,
        )

    def __eq__(self, other):
        if not isinstance(other, PlabicGraph):
            return NotImplemented
        return self.canonical_key == other.canonical_key

    def __hash__(self):
        return hash(self.canonical_key)

    def __repr__(self):
        return (f"PlabicGraph(n={self.n}, internal={len(self.colors)}, "
                f"edges={len(self.edges)}, faces={self.num_faces})")

    # ------------------------------------------------------------------
    # serialization

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "boundary_labels": list(self.boundary_labels),
            "vertices": [{"id": v, "color": self.colors[v]} for v in sorted(self.colors)],
            "rotations": {str(v): list(self.rotations[v]) for v in sorted(self.rotations)},
            "edges": [{"id": e, "endpoints": list(self.edges[e])} for e in sorted(self.edges)],
        }

    @classmethod
    def from_json(cls, data: dict) -> PlabicGraph:
        return cls(
            int(data["n"]),
            {int(v["id"]): v["color"] for v in data["vertices"]},
            {int(e["id"]): tuple(e["endpoints"]) for e in data["edges"]},
            {int(v): tuple(r) for v, r in data["rotations"].items()},
            tuple(data.get("boundary_labels") or ()),
        )

    def to_dot(self) -> str:
        lines = ["graph plabic {", "  layout=neato;"]
        for i in range(1, self.n + 1):
            lines.append(f'  b{i} [shape=plaintext, label="{self.boundary_labels[i - 1]}"];')
        for v in sorted(self.colors):
            fill = "black" if self.colors[v] == BLACK else "white"
            lines.append(f'  v{v} [shape=circle, style=filled, fillcolor={fill}, label=""];')
        for e in sorted(self.edges):
            a, b = self.edges[e]
            name = lambda x: f"b{x}" if x <= self.n else f"v{x}"
            lines.append(f"  {name(a)} -- {name(b)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def from_coordinates(
    n: int,
    colors: Mapping[int, str],
    edges: Iterable[tuple[int, int]],
    coords: Mapping[int, tuple[float, float]],
    boundary_labels: Optional[Iterable[int]] = None,
) -> PlabicGraph:
    """Build a graph from a straight-line drawing (``y`` pointing up)."""
    import math

    edge_map = {e: tuple(uv) for e, uv in enumerate(edges)}
    inc: dict[int, list[int]] = {v: [] for v in colors}
    for e, (a, b) in edge_map.items():
        for x in (a, b):
            if x in inc:
                inc[x].append(e)

    def angle(v, e):
        x0, y0 = coords[v]
        x1, y1 = coords[edge_map[e][0] if edge_map[e][1] == v else edge_map[e][1]]
        return math.atan2(y1 - y0, x1 - x0)

    # clockwise = decreasing angle
    rotations = {v: tuple(sorted(es, key=lambda e: -angle(v, e))) for v, es in inc.items()}
    return PlabicGraph(n, colors, edge_map, rotations,
                       tuple(boundary_labels) if boundary_labels else ())

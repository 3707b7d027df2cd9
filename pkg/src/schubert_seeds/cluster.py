"""
Quivers, labeled seeds and mutation.

Cluster variables are represented by their values at a fixed list of sample
points (exact rationals).  Two variables are identified when their value
vectors agree; with several generic sample points a false identification
is possible in principle but not expected in practice.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .errors import DegenerateSampleError, PreconditionError, VarietyMismatchError

MUTABLE = "mutable"
FROZEN = "frozen"

Vertex = Hashable
EvalVector = tuple[Fraction, ...]


@dataclass(frozen=True, eq=False)
class Quiver:
    """Quiver without loops or 2-cycles; arrows stored as multiplicities.

    Arrows between two frozen vertices are never stored.
    """

    kinds: Mapping[Vertex, str]
    arrows: Mapping[tuple[Vertex, Vertex], int]

    def __post_init__(self):
        kinds = dict(self.kinds)
        arrows = {}
        for (a, b), m in self.arrows.items():
            if a not in kinds or b not in kinds:
                raise PreconditionError(f"arrow {a}->{b} has an unknown endpoint")
            if a == b:
                raise PreconditionError(f"loop at {a}")
            if m < 0:
                raise PreconditionError("negative multiplicity")
            if m == 0 or (kinds[a] == FROZEN and kinds[b] == FROZEN):
                continue
            if (b, a) in arrows:
                raise PreconditionError(f"2-cycle between {a} and {b}")
            arrows[(a, b)] = m
        bad = {k for k in kinds.values() if k not in (MUTABLE, FROZEN)}
        if bad:
            raise PreconditionError(f"unknown vertex kinds {bad}")
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "arrows", arrows)

    @classmethod
    def from_arrow_counts(cls, kinds: Mapping[Vertex, str],
                          counts: Mapping[tuple[Vertex, Vertex], int]) -> Quiver:
        """Build a quiver from raw arrow counts, cancelling 2-cycles."""
        net: dict[tuple[Vertex, Vertex], int] = {}
        for (a, b), m in counts.items():
            if (b, a) in net:
                net[(b, a)] -= m
            else:
                net[(a, b)] = net.get((a, b), 0) + m
        arrows = {}
        for (a, b), m in net.items():
            if m > 0:
                arrows[(a, b)] = m
            elif m < 0:
                arrows[(b, a)] = -m
        return cls(kinds, arrows)

    @property
    def vertices(self) -> list:
        return list(self.kinds)

    @property
    def mutable(self) -> list:
        return [v for v, k in self.kinds.items() if k == MUTABLE]

    @property
    def frozen(self) -> list:
        return [v for v, k in self.kinds.items() if k == FROZEN]

    def out_arrows(self, q: Vertex) -> dict[Vertex, int]:
        return {b: m for (a, b), m in self.arrows.items() if a == q}

    def in_arrows(self, q: Vertex) -> dict[Vertex, int]:
        return {a: m for (a, b), m in self.arrows.items() if b == q}

    def relabel(self, names: Mapping[Vertex, Vertex]) -> Quiver:
        if len(set(names[v] for v in self.kinds)) != len(self.kinds):
            raise PreconditionError("relabeling is not injective")
        return Quiver({names[v]: k for v, k in self.kinds.items()},
                      {(names[a], names[b]): m for (a, b), m in self.arrows.items()})

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.kinds == other.kinds and self.arrows == other.arrows

    def __hash__(self):
        return hash((frozenset(self.kinds.items()), frozenset(self.arrows.items())))

    def __repr__(self):
        return f"Quiver({len(self.mutable)} mutable, {len(self.frozen)} frozen, {sum(self.arrows.values())} arrows)"

    def to_json(self) -> dict:
        def key(v):
            return list(v) if isinstance(v, tuple) else v
        return {
            "vertices": [{"id": key(v), "kind": k} for v, k in sorted(self.kinds.items(), key=_sort_key)],
            "arrows": [{"source": key(a), "target": key(b), "multiplicity": m}
                       for (a, b), m in sorted(self.arrows.items(), key=_sort_key)],
        }

    def to_dot(self, annotations: Optional[Mapping[Vertex, str]] = None) -> str:
        names = {v: f"q{i}" for i, v in enumerate(sorted(self.kinds, key=_sort_key))}
        lines = ["digraph quiver {"]
        for v in sorted(self.kinds, key=_sort_key):
            label = _display(v)
            if annotations and v in annotations:
                label += "\\n" + annotations[v]
            shape = "box" if self.kinds[v] == FROZEN else "circle"
            lines.append(f'  {names[v]} [shape={shape}, label="{label}"];')
        for (a, b), m in sorted(self.arrows.items(), key=_sort_key):
            for _ in range(m):
                lines.append(f"  {names[a]} -> {names[b]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _sort_key(item):
    return repr(item)


def _display(v) -> str:
    if isinstance(v, tuple) and all(isinstance(x, int) for x in v):
        return "".join(map(str, v)) if all(x < 10 for x in v) else ",".join(map(str, v))
    return str(v)


def mutate_quiver(quiver: Quiver, q: Vertex) -> Quiver:
    """Quiver mutation at a mutable vertex ``q``."""
    if quiver.kinds.get(q) != MUTABLE:
        raise PreconditionError(f"cannot mutate at {q!r}: not a mutable vertex")
    counts: dict[tuple[Vertex, Vertex], int] = {}
    ins = quiver.in_arrows(q)
    outs = quiver.out_arrows(q)
    for (a, b), m in quiver.arrows.items():
        if q in (a, b):
            counts[(b, a)] = counts.get((b, a), 0) + m
        else:
            counts[(a, b)] = counts.get((a, b), 0) + m
    for r, mr in ins.items():
        for s, ms in outs.items():
            if quiver.kinds[r] == FROZEN and quiver.kinds[s] == FROZEN:
                continue
            counts[(r, s)] = counts.get((r, s), 0) + mr * ms
    return Quiver.from_arrow_counts(quiver.kinds, counts)


@dataclass(frozen=True, eq=False)
class Seed:
    """A quiver whose vertices carry value vectors and optional names."""

    quiver: Quiver
    values: Mapping[Vertex, EvalVector]
    names: Mapping[Vertex, object] = field(default_factory=dict)

    def __post_init__(self):
        values = {v: tuple(Fraction(x) for x in vec) for v, vec in self.values.items()}
        if set(values) != set(self.quiver.kinds):
            raise PreconditionError("values must be given for exactly the quiver vertices")
        lengths = {len(vec) for vec in values.values()}
        if len(lengths) > 1 or lengths == {0}:
            raise PreconditionError("value vectors must share a positive length")
        for v, vec in values.items():
            if not any(vec):
                raise DegenerateSampleError(f"value of {v!r} is the zero vector")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "names", dict(self.names))

    @property
    def dimension(self) -> int:
        return len(next(iter(self.values.values())))

    def exchange_products(self, q: Vertex) -> tuple[EvalVector, EvalVector]:
        """Coordinatewise products over arrows out of and into ``q``."""
        d = self.dimension
        out = [Fraction(1)] * d
        inn = [Fraction(1)] * d
        for r, m in self.quiver.out_arrows(q).items():
            vec = self.values[r]
            for t in range(d):
                out[t] *= vec[t] ** m
        for s, m in self.quiver.in_arrows(q).items():
            vec = self.values[s]
            for t in range(d):
                inn[t] *= vec[t] ** m
        return tuple(out), tuple(inn)

    def cluster(self) -> frozenset:
        return frozenset(self.values[v] for v in self.quiver.mutable)

    def canonical_key(self) -> tuple:
        """Key identifying the seed up to relabeling of its vertices."""
        val = self.values
        if len(set(val.values())) != len(val):
            raise DegenerateSampleError("two vertices carry the same value vector")
        kinds = tuple(sorted((val[v], k) for v, k in self.quiver.kinds.items()))
        arrows = tuple(sorted((val[a], val[b], m) for (a, b), m in self.quiver.arrows.items()))
        return (kinds, arrows)

    def to_json(self) -> dict:
        def key(v):
            return list(v) if isinstance(v, tuple) else v
        verts = []
        for v in sorted(self.quiver.kinds, key=_sort_key):
            entry = {"id": key(v), "kind": self.quiver.kinds[v],
                     "value": [str(x) for x in self.values[v]]}
            if v in self.names and self.names[v] is not None:
                entry["name"] = key(self.names[v])
            verts.append(entry)
        arrows = [{"source": key(a), "target": key(b), "multiplicity": m}
                  for (a, b), m in sorted(self.quiver.arrows.items(), key=_sort_key)]
        return {"vertices": verts, "arrows": arrows}

    @classmethod
    def from_json(cls, data: dict) -> Seed:
        def key(v):
            return tuple(v) if isinstance(v, list) else v
        kinds = {key(v["id"]): v["kind"] for v in data["vertices"]}
        values = {key(v["id"]): tuple(Fraction(x) for x in v["value"]) for v in data["vertices"]}
        names = {key(v["id"]): key(v["name"]) for v in data["vertices"] if "name" in v}
        arrows = {(key(a["source"]), key(a["target"])): a["multiplicity"] for a in data["arrows"]}
        return cls(Quiver(kinds, arrows), values, names)

    def to_dot(self) -> str:
        ann = {v: ",".join(str(x) for x in vec) for v, vec in self.values.items()}
        return self.quiver.to_dot(ann)


def mutate_seed(seed: Seed, q: Vertex,
                dictionary: Optional[Mapping[EvalVector, object]] = None) -> Seed:
    """Seed mutation at ``q`` via the exchange relation.

    ``dictionary`` maps value vectors to names (e.g. Plücker labels); the
    new variable keeps a name only if its vector is found there.
    """
    if seed.quiver.kinds.get(q) != MUTABLE:
        raise PreconditionError(f"cannot mutate at {q!r}: not a mutable vertex")
    old = seed.values[q]
    if any(x == 0 for x in old):
        raise DegenerateSampleError(f"value of {q!r} vanishes at a sample point")
    out, inn = seed.exchange_products(q)
    new = tuple((a + b) / x for a, b, x in zip(out, inn, old))
    values = dict(seed.values)
    values[q] = new
    names = dict(seed.names)
    names.pop(q, None)
    if dictionary is not None and new in dictionary:
        names[q] = dictionary[new]
    return Seed(mutate_quiver(seed.quiver, q), values, names)


@dataclass
class Exploration:
    seeds: list[Seed]
    variables: set[EvalVector]
    exhausted: bool

    @property
    def num_clusters(self) -> int:
        return len(self.seeds)

    @property
    def num_variables(self) -> int:
        return len(self.variables)


def explore(seed: Seed, max_seeds: int = 10_000) -> Exploration:
    """Breadth-first search of the mutation class of ``seed``.

    Seeds are identified by :meth:`Seed.canonical_key`.  ``exhausted`` is
    true when the class closed up within ``max_seeds`` seeds.
    """
    seen = {seed.canonical_key(): seed}
    variables = set(seed.values[v] for v in seed.quiver.mutable)
    queue = deque([seed])
    while queue:
        s = queue.popleft()
        for q in s.quiver.mutable:
            t = mutate_seed(s, q)
            key = t.canonical_key()
            if key in seen:
                continue
            if len(seen) >= max_seeds:
                return Exploration(list(seen.values()), variables, False)
            seen[key] = t
            variables.add(t.values[q])
            queue.append(t)
    return Exploration(list(seen.values()), variables, True)


def random_walk(seed: Seed, steps: int, rng: random.Random) -> list[Seed]:
    """Mutate at uniformly random mutable vertices; returns every seed visited."""
    path = [seed]
    mutable = seed.quiver.mutable
    if not mutable:
        return path
    for _ in range(steps):
        path.append(mutate_seed(path[-1], rng.choice(mutable)))
    return path


def seed_from_graph(graph, samples: Sequence) -> Seed:
    """Seed of a reduced plabic graph evaluated at Plücker sample points.

    Vertices are the target labels; each value is the Plücker coordinate of
    the label at the samples.  A label that vanishes at every sample means
    the samples do not lie on the graph's variety; a label that vanishes at
    only some samples is a degenerate draw.
    """
    if not samples:
        raise PreconditionError("at least one sample point is needed")
    labels = graph.target_labels
    values = {}
    for lab in labels.values():
        vec = tuple(p[lab] for p in samples)
        if not any(vec):
            raise VarietyMismatchError(f"Plücker coordinate {lab} vanishes at every sample")
        if not all(vec):
            raise DegenerateSampleError(f"Plücker coordinate {lab} vanishes at some sample")
        values[lab] = vec
    quiver = graph.labeled_quiver()
    return Seed(quiver, values, {lab: lab for lab in labels.values()})


@dataclass
class CrosscheckReport:
    shape: object
    family: str
    rank: int
    exploration: Exploration
    max_seeds: int

    @property
    def predicted_finite(self) -> bool:
        return self.family != "Infinite"

    @property
    def status(self) -> str:
        """``consistent``, ``contradiction`` or ``bound_too_small``."""
        ex = self.exploration
        if ex.exhausted == self.predicted_finite:
            return "consistent"
        if self.predicted_finite:
            return "bound_too_small"
        return "contradiction"


def finite_type_crosscheck(shape, max_seeds: int = 10_000, d: int = 5,
                           rng: Optional[random.Random] = None) -> CrosscheckReport:
    """Compare ``classify(shape)`` against a bounded exploration of its seed.

    A finite classification whose exploration does not close within
    ``max_seeds`` is reported as ``bound_too_small``; an infinite
    classification whose exploration closes is a ``contradiction``.
    """
    from .oracle import schubert_points
    from .plabic import graph_from_shape
    from .shapes import classify

    rng = rng or random.Random(0)
    graph = graph_from_shape(shape)
    ctype = classify(shape, graph)
    seed = seed_from_graph(graph, schubert_points(shape, d, rng))
    return CrosscheckReport(shape, ctype.family, ctype.rank, explore(seed, max_seeds), max_seeds)

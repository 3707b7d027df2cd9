"""
Young diagrams in a ``k x (n-k)`` rectangle and the finite-type classification.

Diagrams are in English notation.  The southeast boundary of a diagram is a
lattice path from the northeast corner of the rectangle to its southwest
corner; its steps are labeled ``1..n`` in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .errors import PreconditionError
from .weyl import Permutation

KSubset = tuple[int, ...]


def ksubset(elements: Iterable[int], k: int, n: int) -> KSubset:
    """Validate and normalize a ``k``-subset of ``[n]`` to a sorted tuple."""
    s = tuple(sorted(set(int(e) for e in elements)))
    if len(s) != k or (s and (s[0] < 1 or s[-1] > n)):
        raise PreconditionError(f"{s} is not a {k}-subset of [1, {n}]")
    return s


@dataclass(frozen=True)
class Shape:
    """A partition fitting in the ``k x (n-k)`` rectangle."""

    rows: tuple[int, ...]
    k: int
    n: int

    def __init__(self, rows: Iterable[int], k: int, n: int):
        rows = [int(r) for r in rows]
        while rows and rows[-1] == 0:
            rows.pop()
        if not 0 <= k <= n:
            raise PreconditionError(f"need 0 <= k <= n, got k={k}, n={n}")
        if len(rows) > k or any(r < 0 or r > n - k for r in rows):
            raise PreconditionError(f"shape {rows} does not fit in {k}x{n - k}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise PreconditionError(f"rows {rows} are not weakly decreasing")
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)

    @classmethod
    def rectangle(cls, k: int, n: int) -> Shape:
        return cls([n - k] * k, k, n)

    def __len__(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> int:
        """Length of row ``i`` (1-indexed), zero past the last row."""
        return self.rows[i - 1] if 1 <= i <= len(self.rows) else 0

    @property
    def size(self) -> int:
        return sum(self.rows)

    def boxes(self) -> set[tuple[int, int]]:
        return {(i, j) for i, r in enumerate(self.rows, start=1) for j in range(1, r + 1)}

    def transpose(self) -> Shape:
        cols = [sum(1 for r in self.rows if r >= j) for j in range(1, self.n - self.k + 1)]
        return Shape(cols, self.n - self.k, self.n)

    def contains(self, other: Shape) -> bool:
        return all(self.row(i) >= other.row(i) for i in range(1, len(other.rows) + 1))

    def boundary_steps(self) -> tuple[list[int], list[int]]:
        """Labels of the (west, south) steps of the boundary path, NE to SW."""
        west, south = [], []
        x, label = self.n - self.k, 1
        for i in range(1, self.k + 1):
            while x > self.row(i):
                west.append(label)
                label += 1
                x -= 1
            south.append(label)
            label += 1
        while x > 0:
            west.append(label)
            label += 1
            x -= 1
        return west, south

    def __str__(self) -> str:
        body = ",".join(map(str, self.rows)) if self.rows else "()"
        return f"{body} in {self.k}x{self.n - self.k}"

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "k": self.k, "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> Shape:
        return cls(data["rows"], data["k"], data["n"])


def all_shapes(k: int, n: int) -> Iterator[Shape]:
    """Every diagram inside the ``k x (n-k)`` rectangle."""
    def rec(prefix, bound, remaining):
        yield Shape(prefix, k, n)
        if remaining == 0:
            return
        for r in range(1, bound + 1):
            yield from rec(prefix + [r], r, remaining - 1)
    yield from rec([], n - k, k)


def partsw(shape: Shape) -> KSubset:
    """Labels of the south steps of the boundary path read NE to SW."""
    return tuple(shape.boundary_steps()[1])


def partne(shape: Shape) -> KSubset:
    """Labels of the north steps of the boundary path read SW to NE."""
    return tuple(sorted(shape.n + 1 - s for s in partsw(shape)))


def shape_of(subset: Iterable[int], k: int, n: int) -> Shape:
    """Inverse of :func:`partsw`."""
    s = ksubset(subset, k, n)
    # west steps preceding the r-th south step = s_r - r
    return Shape([(n - k) - (s_r - r) for r, s_r in enumerate(s, start=1)], k, n)


def derived_shape(shape: Shape) -> Shape:
    """Remove every box touching the southeast boundary.

    Box ``(i, j)`` survives iff ``(i+1, j+1)`` is a box, so row ``i`` of the
    result has length ``max(row(i+1) - 1, 0)``.
    """
    return Shape([max(shape.row(i + 1) - 1, 0) for i in range(1, shape.k + 1)],
                 shape.k, shape.n)


def image_of_initial_segment(x: Permutation, k: int) -> KSubset:
    """``x[k] = {x(1), ..., x(k)}`` as a sorted tuple."""
    if not 0 <= k <= x.n:
        raise PreconditionError(f"k={k} outside [0, {x.n}]")
    return tuple(sorted(x.one_line[:k]))


@dataclass(frozen=True)
class ClusterType:
    family: str
    rank: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(f"unknown family {self.family!r}")
        if self.rank is not None:
            minimum = {"A": 0, "D": 4, "E6": 6, "E7": 7, "E8": 8}.get(self.family, 0)
            if self.rank < minimum:
                raise PreconditionError(f"rank {self.rank} too small for {self.family}")

    @property
    def is_finite(self) -> bool:
        return self.family != "Infinite"

    def __str__(self) -> str:
        if self.family in ("A", "D") and self.rank is not None:
            return f"{self.family}{self.rank}"
        return self.family


FAMILIES = ("A", "D", "E6", "E7", "E8", "Infinite")

_E_SHAPES = {
    "E6": [(3, 3), (3, 2, 1)],
    "E7": [(4, 3), (4, 2, 1), (3, 3, 1)],
    "E8": [(5, 3), (5, 2, 1), (4, 4), (4, 2, 2)],
}


def _transpose_rows(rows: tuple[int, ...]) -> tuple[int, ...]:
    if not rows:
        return ()
    return tuple(sum(1 for r in rows if r >= j) for j in range(1, rows[0] + 1))


E_TYPES: dict[tuple[int, ...], str] = {}
for _family, _shapes in _E_SHAPES.items():
    for _rows in _shapes:
        E_TYPES[_rows] = _family
        E_TYPES[_transpose_rows(_rows)] = _family


def classify_derived(rows: Iterable[int]) -> str:
    """Cluster family from the already-derived diagram ``lambda'``."""
    rows = tuple(r for r in rows if r > 0)
    if len(rows) < 2 or rows[1] < 2:
        return "A"
    cols = _transpose_rows(rows)
    if (len(rows) == 2 and rows[1] == 2) or (len(cols) == 2 and cols[1] == 2):
        return "D"
    return E_TYPES.get(rows, "Infinite")


def classify(shape: Shape, graph=None) -> ClusterType:
    """Finite-type classification of the cluster structure on ``X_shape``.

    The rank is the number of mutable faces of ``graph`` when one is given,
    and ``|lambda'|`` otherwise (the two agree on every reduced graph).
    """
    derived = derived_shape(shape)
    family = classify_derived(derived.rows)
    if graph is not None:
        rank = sum(1 for f in range(graph.num_faces) if not graph.is_frozen_face(f))
    else:
        rank = derived.size
    return ClusterType(family, rank)


def subsets(k: int, n: int) -> list[KSubset]:
    return list(combinations(range(1, n + 1), k))

"""
Symmetric group combinatorics.

Permutations are 1-indexed and stored in one-line notation: ``w(i) = w[i]``
for ``i`` in ``1..n``.  Lengths are inversion counts, Bruhat comparison uses
the rank-matrix criterion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import (
    NotLengthAdditiveError,
    PreconditionError,
)

BLACK = "black"
WHITE = "white"
COLORS = (BLACK, WHITE)


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``[1, n]`` in one-line notation."""

    one_line: tuple[int, ...]

    def __init__(self, one_line: Iterable[int]):
        values = tuple(int(x) for x in one_line)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise PreconditionError(f"not a permutation of [1, n]: {values}")
        object.__setattr__(self, "one_line", values)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n: int) -> Permutation:
        return cls(range(n, 0, -1))

    @property
    def n(self) -> int:
        return len(self.one_line)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"{i} outside [1, {self.n}]")
        return self.one_line[i - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.one_line)

    def __len__(self) -> int:
        return self.n

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition ``(self * other)(i) = self(other(i))``."""
        _check_same_size(self, other)
        return Permutation(self.one_line[j - 1] for j in other.one_line)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, wi in enumerate(self.one_line, start=1):
            inv[wi - 1] = i
        return Permutation(inv)

    def fixed_points(self) -> list[int]:
        return [i for i, wi in enumerate(self.one_line, start=1) if i == wi]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.one_line)) + ")"

    def to_json(self) -> list[int]:
        return list(self.one_line)

    @classmethod
    def from_json(cls, data: Iterable[int]) -> Permutation:
        return cls(data)


@dataclass(frozen=True)
class DecoratedPermutation:
    """A permutation together with a black/white coloring of its fixed points."""

    perm: Permutation
    fixed_point_colors: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        colors = dict(self.fixed_point_colors)
        fixed = set(self.perm.fixed_points())
        if set(colors) != fixed:
            raise PreconditionError(
                f"fixed points {sorted(fixed)} must be colored exactly once, got {colors}"
            )
        bad = {c for c in colors.values() if c not in COLORS}
        if bad:
            raise PreconditionError(f"unknown colors {bad}")
        object.__setattr__(self, "fixed_point_colors", dict(sorted(colors.items())))

    @property
    def n(self) -> int:
        return self.perm.n

    @property
    def one_line(self) -> tuple[int, ...]:
        return self.perm.one_line

    def __eq__(self, other):
        if not isinstance(other, DecoratedPermutation):
            return NotImplemented
        return (self.perm == other.perm
                and self.fixed_point_colors == other.fixed_point_colors)

    def __hash__(self):
        return hash((self.perm, tuple(self.fixed_point_colors.items())))

    def __str__(self) -> str:
        marks = {BLACK: "*", WHITE: "o"}
        parts = []
        for i, wi in enumerate(self.perm.one_line, start=1):
            parts.append(f"{wi}{marks[self.fixed_point_colors[i]]}" if i == wi else str(wi))
        return "(" + ",".join(parts) + ")"

    def to_json(self) -> dict:
        return {
            "perm": self.perm.to_json(),
            "fixed_point_colors": {str(i): c for i, c in self.fixed_point_colors.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> DecoratedPermutation:
        colors = {int(i): c for i, c in data.get("fixed_point_colors", {}).items()}
        return cls(Permutation(data["perm"]), colors)


def _check_same_size(v: Permutation, w: Permutation) -> None:
    if v.n != w.n:
        raise PreconditionError(f"size mismatch: S_{v.n} vs S_{w.n}")


def _check_k(k: int, n: int) -> None:
    if not 1 < k < n:
        raise PreconditionError(f"need 1 < k < n, got k={k}, n={n}")


def length(w: Permutation) -> int:
    """Number of inversions ``i < j`` with ``w(i) > w(j)``."""
    a = w.one_line
    return sum(1 for i in range(len(a)) for j in range(i + 1, len(a)) if a[i] > a[j])


def longest_parabolic(k: int, n: int) -> Permutation:
    """Longest element ``w_K`` of the parabolic subgroup fixing ``[k]`` setwise."""
    _check_k(k, n)
    return Permutation(list(range(k, 0, -1)) + list(range(n, k, -1)))


def bruhat_leq(v: Permutation, w: Permutation) -> bool:
    """Bruhat order via rank matrices.

    ``v <= w`` iff for all ``i, j``: ``#{a <= i : v(a) >= j} <= #{a <= i : w(a) >= j}``.
    """
    _check_same_size(v, w)
    n = v.n
    # running counts per threshold j, updated row by row
    cv = [0] * (n + 2)
    cw = [0] * (n + 2)
    for i in range(n):
        for j in range(1, v.one_line[i] + 1):
            cv[j] += 1
        for j in range(1, w.one_line[i] + 1):
            cw[j] += 1
        if any(cv[j] > cw[j] for j in range(1, n + 1)):
            return False
    return True


def coset_rep_kind(w: Permutation, k: int) -> str:
    """Classify ``w`` as a ``"min"``, ``"max"`` or ``"neither"`` coset representative."""
    _check_k(k, w.n)
    head, tail = w.one_line[:k], w.one_line[k:]

    def increasing(s):
        return all(a < b for a, b in zip(s, s[1:]))

    def decreasing(s):
        return all(a > b for a, b in zip(s, s[1:]))

    if increasing(head) and increasing(tail):
        return "min"
    if decreasing(head) and decreasing(tail):
        return "max"
    return "neither"


def length_additive_factor(w: Permutation, v: Permutation) -> Permutation:
    """Return ``x = w v^{-1}`` provided ``l(w) = l(x) + l(v)``.

    Raises :class:`NotLengthAdditiveError` otherwise.
    """
    _check_same_size(w, v)
    x = w * v.inverse()
    lx, lv, lw = length(x), length(v), length(w)
    if lx + lv != lw:
        raise NotLengthAdditiveError(
            f"w={w} = x v with x={x} is not length-additive: "
            f"l(x)={lx}, l(v)={lv}, l(w)={lw}"
        )
    return x


def ppermsw(shape) -> DecoratedPermutation:
    """Decorated permutation attached to a Young diagram.

    One-line notation lists the labels of the west steps of the boundary path,
    then the labels of the south steps.  Fixed points in positions ``1..n-k``
    are black, the rest white.
    """
    west, south = shape.boundary_steps()
    perm = Permutation(west + south)
    n, k = shape.n, shape.k
    colors = {i: (BLACK if i <= n - k else WHITE) for i in perm.fixed_points()}
    return DecoratedPermutation(perm, colors)

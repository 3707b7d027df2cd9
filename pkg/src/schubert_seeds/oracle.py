"""
Exact ground truth on the Grassmannian.

Plücker vectors come either from matrices (maximal minors) or from weighted
plabic graphs (almost perfect matchings).  Everything is computed with
:class:`fractions.Fraction`; there is no floating point anywhere.

Boundary convention for matchings: a boundary vertex belongs to the set of a
matching when its edge is used and ends at a white vertex, or when its edge
is unused and ends at a black vertex.
"""

from __future__ import annotations

import random
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ConstructionError, DegenerateSampleError, PreconditionError
from .shapes import KSubset, Shape, partsw
from .weyl import WHITE

Matrix = list[list[Fraction]]


class PluckerVector(Mapping):
    """Map from sorted ``k``-subsets of ``[n]`` to exact rationals.

    Missing subsets read as zero.
    """

    def __init__(self, k: int, n: int, coords: Mapping[Iterable[int], object]):
        self.k, self.n = k, n
        data = {}
        for key, val in coords.items():
            key = tuple(sorted(key))
            if len(key) != k or any(not 1 <= x <= n for x in key):
                raise PreconditionError(f"{key} is not a {k}-subset of [{n}]")
            val = Fraction(val)
            if val:
                data[key] = val
        if not data:
            raise PreconditionError("Plücker vector is identically zero")
        self._data = data

    def __getitem__(self, key) -> Fraction:
        return self._data.get(tuple(sorted(key)), Fraction(0))

    def __iter__(self) -> Iterator[KSubset]:
        return iter(combinations(range(1, self.n + 1), self.k))

    def __len__(self) -> int:
        return _binom(self.n, self.k)

    def support(self) -> frozenset[KSubset]:
        return frozenset(self._data)

    def zero_set(self) -> frozenset[KSubset]:
        return frozenset(I for I in self if I not in self._data)

    def lex_min_nonzero(self) -> KSubset:
        return min(self._data)

    def scaled(self, c) -> PluckerVector:
        return PluckerVector(self.k, self.n, {I: c * v for I, v in self._data.items()})

    def __eq__(self, other):
        if not isinstance(other, PluckerVector):
            return NotImplemented
        return (self.k, self.n, self._data) == (other.k, other.n, other._data)

    def __hash__(self):
        return hash((self.k, self.n, frozenset(self._data.items())))

    def __repr__(self):
        return f"PluckerVector(k={self.k}, n={self.n}, nonzero={len(self._data)})"

    def to_json(self) -> dict:
        return {",".join(map(str, I)): str(v) for I, v in sorted(self._data.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, str], k: int, n: int) -> PluckerVector:
        return cls(k, n, {tuple(int(x) for x in key.split(",")): Fraction(v)
                          for key, v in data.items()})


def _binom(n: int, k: int) -> int:
    from math import comb
    return comb(n, k)


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    a = [list(map(Fraction, row)) for row in m]
    size = len(a)
    det = Fraction(1)
    for c in range(size):
        pivot = next((r for r in range(c, size) if a[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, size):
            f = a[r][c] * inv
            if f:
                row_r, row_c = a[r], a[c]
                for j in range(c, size):
                    row_r[j] -= f * row_c[j]
    return det


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    a = [list(map(Fraction, row)) for row in m]
    rows, cols = len(a), len(a[0]) if a else 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def pluckers(m: Sequence[Sequence[object]]) -> PluckerVector:
    """All maximal minors of a full-rank ``k x n`` matrix."""
    a = [[Fraction(x) for x in row] for row in m]
    k, n = len(a), len(a[0])
    if rank(a) != k:
        raise PreconditionError("matrix is rank deficient")
    coords = {}
    for cols in combinations(range(n), k):
        coords[tuple(c + 1 for c in cols)] = determinant([[row[c] for c in cols] for row in a])
    return PluckerVector(k, n, coords)


def check_plucker_relations(p: PluckerVector) -> bool:
    """All three-term relations ``D(Sac)D(Sbd) = D(Sab)D(Scd) + D(Sad)D(Sbc)``."""
    k, n = p.k, p.n
    if k < 2 or n - k < 2:
        return True
    ground = range(1, n + 1)
    for S in combinations(ground, k - 2):
        rest = [x for x in ground if x not in S]
        for a, b, c, d in combinations(rest, 4):
            lhs = p[S + (a, c)] * p[S + (b, d)]
            rhs = p[S + (a, b)] * p[S + (c, d)] + p[S + (a, d)] * p[S + (b, c)]
            if lhs != rhs:
                return False
    return True


def gale_leq(I: Sequence[int], J: Sequence[int]) -> bool:
    """Componentwise order on sorted subsets of equal size."""
    return all(a <= b for a, b in zip(sorted(I), sorted(J)))


def schubert_support(shape: Shape) -> frozenset[KSubset]:
    """Subsets whose Plücker coordinate is nonzero at a generic point of the cell."""
    base = partsw(shape)
    return frozenset(J for J in combinations(range(1, shape.n + 1), shape.k)
                     if gale_leq(base, J))


def random_rational(rng: random.Random, positive: bool = False) -> Fraction:
    num = rng.randint(1, 30)
    if not positive and rng.random() < 0.5:
        num = -num
    return Fraction(num, rng.randint(1, 7))


def schubert_sample(shape: Shape, rng: random.Random, max_tries: int = 50) -> Matrix:
    """Random point of the Schubert cell in reduced row-echelon form.

    Pivot columns are ``partsw(shape)``; the ``|shape|`` free entries are
    random nonzero rationals.  The draw is retried until every Plücker
    coordinate that is generically nonzero on the cell is nonzero.
    """
    k, n = shape.k, shape.n
    pivots = partsw(shape)
    want = schubert_support(shape)
    for _ in range(max_tries):
        m = [[Fraction(0)] * n for _ in range(k)]
        for r, p in enumerate(pivots):
            m[r][p - 1] = Fraction(1)
            for c in range(p + 1, n + 1):
                if c not in pivots:
                    m[r][c - 1] = random_rational(rng)
        if k == 0:
            return m
        vec = pluckers(m)
        if vec.support() == want:
            if vec.lex_min_nonzero() != pivots:
                raise DegenerateSampleError("echelon form lost its pivot coordinate")
            return m
    raise DegenerateSampleError(f"no generic sample of {shape} after {max_tries} draws")


def grassmannian_sample(k: int, n: int, rng: random.Random) -> Matrix:
    return schubert_sample(Shape.rectangle(k, n), rng)


# ----------------------------------------------------------------------
# boundary measurement


def almost_perfect_matchings(g) -> Iterator[tuple[int, ...]]:
    """Edge sets covering every internal vertex exactly once."""
    internal = sorted(g.colors)
    covered: set[int] = set()
    chosen: list[int] = []

    def options(v):
        out = []
        for e in g.rotations[v]:
            w = g.other(e, v)
            if w not in covered:
                out.append(e)
        return out

    def rec():
        best, best_opts = None, None
        for v in internal:
            if v in covered:
                continue
            opts = options(v)
            if not opts:
                return
            if best is None or len(opts) < len(best_opts):
                best, best_opts = v, opts
                if len(opts) == 1:
                    break
        if best is None:
            yield tuple(chosen)
            return
        for e in best_opts:
            w = g.other(e, best)
            covered.add(best)
            covered.add(w)
            chosen.append(e)
            yield from rec()
            chosen.pop()
            covered.discard(best)
            covered.discard(w)

    yield from rec()


def matching_boundary(g, matching: Iterable[int]) -> tuple[KSubset, int]:
    """Label set of a matching and the sign that relabeling introduces.

    The sign is the parity of the labels read in position order: moving
    boundary labels permutes the columns of a representing matrix.
    """
    used = set(matching)
    out = []
    for i in range(1, g.n + 1):
        e = g.legs[i]
        inner_white = g.colors[g.other(e, i)] == WHITE
        if (e in used) == inner_white:
            out.append(g.boundary_labels[i - 1])
    inversions = sum(1 for a in range(len(out)) for b in range(a + 1, len(out)) if out[a] > out[b])
    return tuple(sorted(out)), (-1) ** inversions


def boundary_measurement(g, weights: Optional[Mapping[int, object]] = None) -> PluckerVector:
    """Plücker vector of a weighted bipartite plabic graph.

    ``D(I)`` is the total weight of the almost perfect matchings whose
    boundary set (mapped through the boundary labels) is ``I``, each signed
    as in :func:`matching_boundary`.  Missing weights default to 1.  The
    result is checked against the three-term Plücker relations and, for
    positive weights and identity labels, for positivity.
    """
    if not g.is_bipartite():
        raise PreconditionError("boundary measurement needs a bipartite graph")
    w = {e: Fraction(1) for e in g.edges}
    if weights:
        for e, x in weights.items():
            w[e] = Fraction(x)
    totals: dict[KSubset, Fraction] = {}
    sizes = set()
    for m in almost_perfect_matchings(g):
        I, sign = matching_boundary(g, m)
        sizes.add(len(I))
        prod = Fraction(sign)
        for e in m:
            prod *= w[e]
        totals[I] = totals.get(I, Fraction(0)) + prod
    if not totals:
        raise PreconditionError("graph has no almost perfect matching")
    if len(sizes) != 1:
        raise PreconditionError(f"matchings have boundary sets of sizes {sorted(sizes)}")
    (k,) = sizes
    vec = PluckerVector(k, g.n, totals)
    if not check_plucker_relations(vec):
        raise ConstructionError("boundary measurement violates a three-term Plücker relation")
    identity = tuple(g.boundary_labels) == tuple(range(1, g.n + 1))
    if identity and all(x > 0 for x in w.values()) and any(x < 0 for x in totals.values()):
        raise ConstructionError("positive weights produced a non-positive coordinate")
    return vec


def random_positive_weights(g, rng: random.Random) -> dict[int, Fraction]:
    return {e: random_rational(rng, positive=True) for e in sorted(g.edges)}


# ----------------------------------------------------------------------
# samplers


def schubert_points(shape: Shape, d: int, rng: random.Random) -> list[PluckerVector]:
    return [pluckers(schubert_sample(shape, rng)) for _ in range(d)]


def positive_points(g, d: int, rng: random.Random) -> list[PluckerVector]:
    """Boundary measurements of ``g`` at ``d`` random positive edge weightings."""
    return [boundary_measurement(g, random_positive_weights(g, rng)) for _ in range(d)]


# ----------------------------------------------------------------------
# exchange relations on the variety


@dataclass
class ExchangeReport:
    face: int
    old_label: KSubset
    new_label: KSubset
    out_labels: dict
    in_labels: dict
    residuals: list[Fraction]

    @property
    def ok(self) -> bool:
        return all(r == 0 for r in self.residuals)


def check_exchange_on_variety(g, face: int, samples: Sequence[PluckerVector]) -> ExchangeReport:
    """Check ``D(I) D(I') = prod(out) + prod(in)`` at every sample point.

    ``I`` labels ``face`` in ``g``; ``I'`` is the label that appears after the
    square move at ``face``; the products run over the arrows of the dual
    quiver at ``face``.
    """
    from .plabic.moves import M1, apply_move, is_normalized

    if not is_normalized(g):
        raise PreconditionError("exchange check expects a normalized graph")
    labels = g.target_labels
    old = labels[face]
    moved = apply_move(g, M1(face))
    fresh = set(moved.target_labels.values()) - set(labels.values())
    if len(fresh) != 1:
        raise PreconditionError(f"square move changed {len(fresh)} labels, expected 1")
    (new,) = fresh
    quiver = g.dual_quiver()
    outs = {labels[r]: m for r, m in quiver.out_arrows(face).items()}
    ins = {labels[s]: m for s, m in quiver.in_arrows(face).items()}
    residuals = []
    for p in samples:
        if any(p[labels[f]] == 0 for f in labels):
            raise DegenerateSampleError("a face label vanishes at a sample point; resample")
        prod_out = Fraction(1)
        for lab, m in outs.items():
            prod_out *= p[lab] ** m
        prod_in = Fraction(1)
        for lab, m in ins.items():
            prod_in *= p[lab] ** m
        residuals.append(p[old] * p[new] - prod_out - prod_in)
    return ExchangeReport(face, old, new, outs, ins, residuals)


# ----------------------------------------------------------------------
# projected Richardson cells


def _sorting_word(x) -> list[int]:
    """Adjacent transpositions that bubble-sort the one-line notation of ``x``."""
    w = list(x.one_line)
    word = []
    done = False
    while not done:
        done = True
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i + 1)
                done = False
                break
    return word


def richardson_sample(v, x, k: int, rng: random.Random) -> Matrix:
    """Point of the projected Richardson cell for ``(v, w = x v)``, as a ``k x n`` matrix.

    Takes ``g = y_{a_1}(t_1) ... y_{a_m}(t_m) P_v`` with ``y_a(t) = 1 + t E_{a,a+1}``,
    ``a_1 ... a_m`` the bubble-sort word of ``x`` (a reduced word of ``x^{-1}``),
    ``t_j`` random positive rationals and ``P_v`` the matrix with ones at
    ``(v(i), i)``; returns the top ``k`` rows.  This is independent of any
    plabic graph and serves as a cross-check on the relabeled-graph sampler.
    """
    n = v.n
    g = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for a in _sorting_word(x):
        t = random_rational(rng, positive=True)
        # right-multiplying by 1 + t E_{a,a+1} adds t * column a to column a+1
        for row in g:
            row[a] += t * row[a - 1]
    perm = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        perm[v(i) - 1][i - 1] = Fraction(1)
    out = [[sum((g[r][s] * perm[s][c] for s in range(n)), Fraction(0)) for c in range(n)]
           for r in range(k)]
    return out

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from schubert_seeds.cluster import (
    Quiver,
    Seed,
    explore,
    finite_type_crosscheck,
    mutate_quiver,
    mutate_seed,
    random_walk,
    seed_from_graph,
)
from schubert_seeds.errors import DegenerateSampleError, PreconditionError, VarietyMismatchError
from schubert_seeds.oracle import grassmannian_sample, pluckers, schubert_points
from schubert_seeds.plabic import graph_from_shape
from schubert_seeds.shapes import Shape

M, F = "mutable", "frozen"


def b_matrix_mutation(b, k):
    """Fomin-Zelevinsky matrix mutation, used as an independent oracle."""
    n = len(b)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            else:
                bik, bkj = b[i][k], b[k][j]
                sign = (bik > 0) - (bik < 0)
                out[i][j] = b[i][j] + sign * max(bik * bkj, 0)
    return out


def quiver_to_b(q, order):
    idx = {v: i for i, v in enumerate(order)}
    b = [[0] * len(order) for _ in order]
    for (a, c), m in q.arrows.items():
        b[idx[a]][idx[c]] += m
        b[idx[c]][idx[a]] -= m
    return b


@st.composite
def mutable_quivers(draw):
    n = draw(st.integers(2, 6))
    counts = {}
    for i in range(n):
        for j in range(i + 1, n):
            m = draw(st.integers(-2, 2))
            if m > 0:
                counts[(i, j)] = m
            elif m < 0:
                counts[(j, i)] = -m
    return Quiver({i: M for i in range(n)}, counts)


def linear_a(n):
    return Quiver({i: M for i in range(n)}, {(i, i + 1): 1 for i in range(n - 1)})


def unit_seed(q, d=3, rng=None):
    rng = rng or random.Random(1)
    values = {v: tuple(Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(d)) for v in q.kinds}
    return Seed(q, values)


@given(mutable_quivers(), st.data())
def test_quiver_mutation_matches_matrix_mutation(q, data):
    order = sorted(q.kinds)
    k = data.draw(st.sampled_from(order))
    assert quiver_to_b(mutate_quiver(q, k), order) == b_matrix_mutation(quiver_to_b(q, order), k)


@given(mutable_quivers(), st.data())
def test_quiver_mutation_is_involution(q, data):
    k = data.draw(st.sampled_from(sorted(q.kinds)))
    assert mutate_quiver(mutate_quiver(q, k), k) == q


@settings(max_examples=50)
@given(mutable_quivers(), st.data())
def test_seed_mutation_is_involution(q, data):
    k = data.draw(st.sampled_from(sorted(q.kinds)))
    s = unit_seed(q)
    back = mutate_seed(mutate_seed(s, k), k)
    assert back.quiver == s.quiver and back.values == s.values


def test_quiver_mutation_example():
    q = Quiver({1: M, 2: M, 3: M}, {(1, 2): 1, (2, 3): 1})
    r = mutate_quiver(q, 2)
    assert r.arrows == {(2, 1): 1, (3, 2): 1, (1, 3): 1}


def test_markov_quiver_is_mutation_invariant():
    q = Quiver({1: M, 2: M, 3: M}, {(1, 2): 2, (2, 3): 2, (3, 1): 2})
    r = mutate_quiver(q, 1)
    assert r.arrows == {(2, 1): 2, (1, 3): 2, (3, 2): 2}


def test_frozen_arrows_dropped():
    q = Quiver({1: F, 2: F, 3: M}, {(1, 2): 1, (1, 3): 1, (3, 2): 1})
    assert (1, 2) not in q.arrows
    r = mutate_quiver(q, 3)
    assert r.arrows == {(3, 1): 1, (2, 3): 1}


def test_quiver_validation():
    with pytest.raises(PreconditionError):
        Quiver({1: M}, {(1, 1): 1})
    with pytest.raises(PreconditionError):
        Quiver({1: M, 2: M}, {(1, 2): 1, (2, 1): 1})
    with pytest.raises(PreconditionError):
        mutate_quiver(Quiver({1: F}, {}), 1)


def test_from_arrow_counts_cancels_two_cycles():
    q = Quiver.from_arrow_counts({1: M, 2: M}, {(1, 2): 3, (2, 1): 1})
    assert q.arrows == {(1, 2): 2}


def test_exchange_relation_example():
    q = Quiver({"x": M, "y": M}, {("x", "y"): 1})
    s = Seed(q, {"x": (Fraction(2),), "y": (Fraction(3),)})
    t = mutate_seed(s, "x")
    assert t.values["x"] == (Fraction(2),)  # (3 + 1) / 2
    assert t.values["y"] == (Fraction(3),)


def test_empty_products_give_two_over_x():
    s = Seed(Quiver({"x": M}, {}), {"x": (Fraction(5), Fraction(1, 3))})
    t = mutate_seed(s, "x")
    assert t.values["x"] == (Fraction(2, 5), Fraction(6))


def test_frozen_values_never_change(rng):
    g = graph_from_shape(Shape((4, 3, 2), 3, 7))
    s = seed_from_graph(g, schubert_points(Shape((4, 3, 2), 3, 7), 3, rng))
    frozen = {v: s.values[v] for v in s.quiver.frozen}
    for t in random_walk(s, 30, rng):
        assert {v: t.values[v] for v in t.quiver.frozen} == frozen


def test_pentagon_recurrence():
    s = unit_seed(linear_a(2), d=2)
    t = s
    for step in range(5):
        t = mutate_seed(t, step % 2)
    assert t.cluster() == s.cluster()
    assert t.values[0] == s.values[1] and t.values[1] == s.values[0]


def test_diamond_commutes_for_disconnected_vertices():
    s = unit_seed(Quiver({1: M, 2: M, 3: M}, {(1, 3): 1}))
    a = mutate_seed(mutate_seed(s, 1), 2)
    b = mutate_seed(mutate_seed(s, 2), 1)
    assert a.values == b.values and a.quiver == b.quiver


def test_gr24_mutation_produces_other_diagonal(rng):
    lam = Shape.rectangle(2, 4)
    g = graph_from_shape(lam)
    points = schubert_points(lam, 4, rng)
    s = seed_from_graph(g, points)
    (q,) = s.quiver.mutable
    t = mutate_seed(s, q)
    other = (1, 3) if q == (2, 4) else (2, 4)
    assert t.values[q] == tuple(p[other] for p in points)


def test_seed_from_graph_errors(rng):
    g = graph_from_shape(Shape.rectangle(2, 4))
    small = schubert_points(Shape((1,), 2, 4), 3, rng)
    with pytest.raises(VarietyMismatchError):
        seed_from_graph(g, small)
    with pytest.raises(PreconditionError):
        seed_from_graph(g, [])
    good = pluckers(grassmannian_sample(2, 4, rng))
    # a point with Delta_12 = 0 but other coordinates generic
    bad = pluckers([[0, 1, 2, 3], [0, 5, 7, 11]])
    with pytest.raises(DegenerateSampleError):
        seed_from_graph(g, [good, bad])


def test_seed_rejects_zero_vectors():
    with pytest.raises(DegenerateSampleError):
        Seed(Quiver({1: M}, {}), {1: (Fraction(0),)})
    with pytest.raises(PreconditionError):
        Seed(Quiver({1: M}, {}), {2: (Fraction(1),)})


def test_seed_json_round_trip(rng):
    lam = Shape((4, 3, 2), 3, 7)
    s = seed_from_graph(graph_from_shape(lam), schubert_points(lam, 3, rng))
    data = json.loads(json.dumps(s.to_json()))
    t = Seed.from_json(data)
    assert t.quiver == s.quiver and t.values == s.values and t.names == s.names
    assert s.to_dot().startswith("digraph")


def test_explore_finite_counts():
    ex = explore(unit_seed(linear_a(2)))
    assert ex.exhausted and (ex.num_clusters, ex.num_variables) == (5, 5)
    ex = explore(unit_seed(linear_a(3)))
    assert ex.exhausted and (ex.num_clusters, ex.num_variables) == (14, 9)


def test_explore_kronecker_is_infinite():
    q = Quiver({1: M, 2: M}, {(1, 2): 2})
    ex = explore(unit_seed(q), max_seeds=50)
    assert not ex.exhausted and ex.num_clusters == 50


def test_explore_seed_without_mutable_vertices():
    s = Seed(Quiver({1: F, 2: F}, {}), {1: (Fraction(1),), 2: (Fraction(2),)})
    ex = explore(s)
    assert ex.exhausted and (ex.num_clusters, ex.num_variables) == (1, 0)


def test_explore_is_deterministic(rng):
    lam = Shape((4, 3, 2), 3, 7)
    s = seed_from_graph(graph_from_shape(lam), schubert_points(lam, 5, rng))
    a, b = explore(s), explore(s)
    assert [x.canonical_key() for x in a.seeds] == [x.canonical_key() for x in b.seeds]


def test_finite_type_crosscheck_statuses():
    r = finite_type_crosscheck(Shape((4, 3, 2), 3, 7))
    assert r.status == "consistent" and r.family == "A" and r.rank == 3
    assert (r.exploration.num_clusters, r.exploration.num_variables) == (14, 9)
    r = finite_type_crosscheck(Shape.rectangle(3, 6), max_seeds=10)
    assert r.family == "D" and r.status == "bound_too_small"
    r = finite_type_crosscheck(Shape.rectangle(4, 8), max_seeds=200)
    assert r.family == "Infinite" and r.status == "consistent"

import itertools
import json

import pytest

from schubert_seeds.cluster import explore, mutate_quiver, seed_from_graph
from schubert_seeds.errors import (
    MoveNotApplicableError,
    NotBruhatComparableError,
    NotLengthAdditiveError,
    NotMaxCosetError,
    PreconditionError,
)
from schubert_seeds.oracle import positive_points
from schubert_seeds.plabic import (
    INCONCLUSIVE,
    NOT_REDUCED,
    REDUCED,
    M1,
    M2,
    M3,
    PlabicGraph,
    apply_move,
    example_432_graph,
    find_parallel_edge_reduction,
    graph_from_decorated,
    graph_from_shape,
    is_normalized,
    is_reduced,
    le_fillings,
    lex_min_basis,
    lollipop_graph,
    move_class,
    normalize,
    parallel_edge_fixture,
    skew_graph,
    square_faces,
    square_move_mutates_quiver,
)
from schubert_seeds.shapes import Shape, all_shapes, partsw, shape_of
from schubert_seeds.weyl import (
    BLACK,
    WHITE,
    DecoratedPermutation,
    Permutation,
    coset_rep_kind,
    length,
    longest_parabolic,
    ppermsw,
)

FIG1_LABELS = {(2, 3, 5), (3, 5, 6), (3, 5, 7), (1, 3, 5), (3, 4, 5),
               (4, 5, 6), (5, 6, 7), (1, 6, 7), (1, 3, 7), (1, 5, 7)}


def labels(g):
    return set(g.target_labels.values())


def decorated_permutations(n):
    for one_line in itertools.permutations(range(1, n + 1)):
        perm = Permutation(one_line)
        fixed = perm.fixed_points()
        for cols in itertools.product((BLACK, WHITE), repeat=len(fixed)):
            yield DecoratedPermutation(perm, dict(zip(fixed, cols)))


def skew_data(n, k):
    for v_line in itertools.permutations(range(1, n + 1)):
        v = Permutation(v_line)
        if coset_rep_kind(v.inverse(), k) != "max":
            continue
        for x_line in itertools.permutations(range(1, n + 1)):
            x = Permutation(x_line)
            try:
                skew_graph(v, x, k)
            except (NotLengthAdditiveError, NotBruhatComparableError):
                continue
            yield v, x


def test_figure_one_trips_and_labels():
    g = example_432_graph()
    assert g.trip_permutation().one_line == (2, 4, 6, 7, 1, 3, 5)
    assert g.num_faces == 10
    assert labels(g) == FIG1_LABELS
    q = g.dual_quiver()
    assert (len(q.frozen), len(q.mutable)) == (7, 3)


def test_example_mutable_faces_and_trip():
    g = example_432_graph()
    q = g.labeled_quiver()
    assert set(q.mutable) == {(3, 5, 6), (3, 5, 7), (1, 5, 7)}
    assert g.trip(5).end == 1


def test_graph_from_shape_matches_figure_one():
    g = graph_from_shape(Shape((4, 3, 2), 3, 7))
    assert g == example_432_graph().canonical()
    assert g.labeled_quiver() == example_432_graph().labeled_quiver()


def test_graph_from_shape_trip_is_ppermsw():
    for n in range(2, 8):
        for k in range(1, n):
            for lam in all_shapes(k, n):
                g = graph_from_shape(lam)
                assert g.trip_permutation() == ppermsw(lam)
                assert g.num_faces == lam.size + 1
                assert g.k == k


def test_empty_shape_is_lollipops():
    g = graph_from_shape(Shape((), 2, 4))
    p = g.trip_permutation()
    assert p.one_line == (1, 2, 3, 4)
    assert p.fixed_point_colors == {1: BLACK, 2: BLACK, 3: WHITE, 4: WHITE}
    assert labels(g) == {(3, 4)}


def test_lollipop_graph():
    g = lollipop_graph([WHITE, BLACK, WHITE])
    assert g.num_faces == 1
    assert labels(g) == {(1, 3)}
    assert g.k == 2


def test_top_cell_gr24():
    g = graph_from_shape(Shape.rectangle(2, 4))
    assert labels(g) == {(1, 2), (2, 4), (2, 3), (3, 4), (1, 4)}
    f = g.face_by_label((2, 4))
    assert square_faces(g) == [f]
    h = apply_move(g, M1(f))
    assert labels(h) == {(1, 2), (1, 3), (2, 3), (3, 4), (1, 4)}
    assert apply_move(h, M1(h.face_by_label((1, 3)))) == g


def test_square_move_not_applicable():
    g = graph_from_shape(Shape.rectangle(2, 4))
    frozen = g.face_by_label((1, 2))
    with pytest.raises(MoveNotApplicableError):
        apply_move(g, M1(frozen))
    with pytest.raises(MoveNotApplicableError):
        apply_move(g, M1(99))


def test_moves_preserve_trip_permutation_and_invariants():
    g = example_432_graph()
    perm = g.trip_permutation()
    for h in move_class(g).graphs:
        assert h.trip_permutation() == perm
        assert h.is_bipartite()
        assert h.euler_ok()
        h.check_invariants()


def test_m3_insert_and_remove():
    g = graph_from_shape(Shape.rectangle(2, 4))
    internal = [e for e, (a, b) in sorted(g.edges.items()) if a > g.n and b > g.n]
    h = apply_move(g, M3(edge=internal[0]))
    assert h.num_faces == g.num_faces
    assert h.trip_permutation() == g.trip_permutation()
    assert labels(h) == labels(g)
    assert not is_normalized(h)
    assert normalize(h) == g
    deg2 = [v for v in h.internal_vertices if h.degree(v) == 2]
    assert len(deg2) == 2
    back = apply_move(h, M3(vertex=deg2[0]))
    assert back == g


def test_m3_on_a_leg():
    g = graph_from_shape(Shape.rectangle(2, 4))
    leg = g.legs[1]
    h = apply_move(g, M3(edge=leg))
    assert h.trip_permutation() == g.trip_permutation()
    deg2 = [v for v in h.internal_vertices if h.degree(v) == 2]
    assert apply_move(h, M3(vertex=deg2[0])) == g


def test_m2_expand_and_contract():
    g = example_432_graph()
    big = next(v for v in g.internal_vertices if g.degree(v) >= 4)
    rot = g.rotation(big)
    h = apply_move(g, M2(big, keep=rot[:2]))
    assert len(h.internal_vertices) == len(g.internal_vertices) + 2
    assert h.trip_permutation() == g.trip_permutation()
    assert labels(h) == labels(g)
    assert normalize(h) == normalize(g)
    with pytest.raises(MoveNotApplicableError):
        apply_move(g, M2(big, keep=(rot[0], rot[2])))


def test_m2_contract_requires_degree_two():
    g = example_432_graph()
    v = next(v for v in g.internal_vertices if g.degree(v) == 3)
    with pytest.raises(MoveNotApplicableError):
        apply_move(g, M2(v))


def test_parallel_edge_fixture_is_not_reduced():
    g = parallel_edge_fixture()
    found = find_parallel_edge_reduction(g)
    assert found is not None and not found.needs_expansion
    assert is_reduced(g) == NOT_REDUCED


def test_is_reduced():
    assert is_reduced(example_432_graph()) == REDUCED
    assert is_reduced(graph_from_shape(Shape.rectangle(3, 6)), search_bound=2) == INCONCLUSIVE


def test_move_class_sizes():
    assert len(move_class(graph_from_shape(Shape.rectangle(2, 4)))) == 2
    assert len(move_class(graph_from_shape(Shape.rectangle(2, 5)))) == 5
    result = move_class(graph_from_shape(Shape.rectangle(3, 6)), bound=5)
    assert not result.exhausted and len(result) == 5


def test_move_class_seeds_agree_with_mutation_class():
    # every graph in the class has a seed reached by mutation, and Gr(2,5) has 5 of each
    g = graph_from_shape(Shape.rectangle(2, 5))
    cls = move_class(g)
    assert cls.exhausted
    assert {frozenset(labels(h)) for h in cls.graphs}.__len__() == len(cls)


def test_square_move_is_mutation():
    for lam in [Shape.rectangle(2, 5), Shape((4, 3, 2), 3, 7), Shape.rectangle(3, 6)]:
        for h in move_class(graph_from_shape(lam), bound=40).graphs:
            for f in square_faces(h):
                assert square_move_mutates_quiver(h, f)


def test_square_move_mutation_explicit():
    g = graph_from_shape(Shape.rectangle(2, 4))
    f = g.face_by_label((2, 4))
    h = apply_move(g, M1(f))
    names = {lab: lab for lab in labels(g)}
    names[(2, 4)] = (1, 3)
    expected = mutate_quiver(g.labeled_quiver(), (2, 4)).relabel(names)
    assert h.labeled_quiver() == expected


def test_json_round_trip():
    for g in [example_432_graph(), graph_from_shape(Shape((2, 1), 2, 5)), lollipop_graph([WHITE, BLACK])]:
        data = json.loads(json.dumps(g.to_json()))
        h = PlabicGraph.from_json(data)
        assert h == g
        assert labels(h) == labels(g)


def test_dot_output_mentions_every_vertex():
    g = example_432_graph()
    dot = g.to_dot()
    assert dot.startswith("graph")
    for v in g.internal_vertices:
        assert str(v) in dot


def test_structure_validation():
    with pytest.raises(PreconditionError):
        PlabicGraph(2, {3: WHITE}, {0: (1, 3), 1: (2, 3)}, {3: (0, 1)}, boundary_labels=(1, 1))


def test_le_fillings_count_decorated_permutations():
    # number of decorated permutations of [n] with k anti-exceedances
    for (k, n), expected in [((2, 4), 33), ((2, 5), 131), ((3, 6), 883)]:
        total = sum(sum(1 for _ in le_fillings(lam)) for lam in all_shapes(k, n))
        assert total == expected


def test_graph_from_decorated_all_n4():
    for p in decorated_permutations(4):
        g = graph_from_decorated(p)
        assert g.trip_permutation_positions() == p
        assert g.k == len(lex_min_basis(p))
        assert min(labels(g)) == lex_min_basis(p)


def test_lex_min_basis_of_schubert_cells():
    for lam in all_shapes(3, 6):
        assert lex_min_basis(ppermsw(lam)) == partsw(lam)


def test_skew_precondition_order():
    v = Permutation((2, 5, 1, 4, 3))
    w = Permutation((5, 3, 4, 2, 1))
    x = w * v.inverse()
    assert length(x) == 6 and length(w) - length(v) == 4
    with pytest.raises(NotLengthAdditiveError):
        skew_graph(v, x, 2)


def test_skew_rejects_non_max_coset():
    v = Permutation.identity(5)
    with pytest.raises(NotMaxCosetError):
        skew_graph(v, Permutation.identity(5), 2)


def test_skew_identity_x_is_lollipops():
    v = longest_parabolic(3, 6)
    g = skew_graph(v, Permutation.identity(6), 3)
    assert g.num_faces == 1
    assert len(g.lollipops()) == 6
    assert labels(g) == {tuple(sorted(v.inverse()(i) for i in range(1, 4)))}


def test_skew_graph_faces_and_rank():
    for n, k in [(5, 2), (6, 3)]:
        count = 0
        for v, x in skew_data(n, k):
            g = skew_graph(v, x, k)
            assert g.num_faces == length(x) + 1
            assert g.k == k
            count += 1
        assert count == {(5, 2): 50, (6, 3): 175}[(n, k)]


def test_skew_relabeling_maps_labels_through_v_inverse():
    for v, x in skew_data(5, 2):
        g = skew_graph(v, x, 2)
        plain = g.relabel_boundary(range(1, 6))
        vinv = v.inverse()
        mapped = {tuple(sorted(vinv(i) for i in lab)) for lab in labels(plain)}
        assert mapped == labels(g)


def test_skew_w0_matches_schubert_counts(rng):
    n, k = 5, 2
    w0 = Permutation(tuple(range(n, 0, -1)))
    for v_line in itertools.permutations(range(1, n + 1)):
        v = Permutation(v_line)
        if coset_rep_kind(v.inverse(), k) != "max":
            continue
        x = w0 * v.inverse()
        g = skew_graph(v, x, k)
        vinv = v.inverse()
        lam = shape_of([vinv(i) for i in range(1, k + 1)], k, n)
        h = graph_from_shape(lam)
        assert g.num_faces == h.num_faces
        assert len(g.dual_quiver().frozen) == len(h.dual_quiver().frozen)
        eg = explore(seed_from_graph(g, positive_points(g, 4, rng)))
        eh = explore(seed_from_graph(h, positive_points(h, 4, rng)))
        assert (eg.num_clusters, eg.num_variables) == (eh.num_clusters, eh.num_variables)

import pytest

from fixtures import nodal_cubic_type, smooth_cubic_type, tropical_line

from tropcurves.canonical import types_isomorphic
from tropcurves.cones import (
    classify,
    cone_dimension,
    cone_of,
    constraint_matrix,
    expected_dimension,
    is_realizable,
    is_regular,
    resolve_wall,
    split_vertex,
)
from tropcurves.graphs import CombinatorialType, Edge, Leg, check_balancing, face_contract
from tropcurves.linalg import mat_rank


def balanced_triangle():
    edges = (Edge(0, 1, (1, 0)), Edge(1, 2, (-1, 1)), Edge(2, 0, (0, -1)))
    legs = (Leg(0, (-1, -1)), Leg(1, (2, -1)), Leg(2, (-1, 2)))
    return CombinatorialType(weights=(0, 0, 0), edges=edges, legs=legs)


def unrealizable_triangle():
    edges = (Edge(0, 1, (1, 0)), Edge(1, 2, (0, 1)), Edge(2, 0, (1, 1)))
    legs = (Leg(0, (0, 1)), Leg(1, (1, -1)), Leg(2, (-1, 0)))
    return CombinatorialType(weights=(0, 0, 0), edges=edges, legs=legs)


def dimension_via_full_matrix(t):
    rows = constraint_matrix(t)
    ambient = 2 * t.n_vertices() + len(t.edges)
    return ambient - mat_rank(rows)


def test_line_cone_dimension_is_translations():
    cone = cone_of(tropical_line())
    assert cone.dimension == 2
    assert cone.realizable
    # a contracted leg adds no coordinates
    assert cone_of(tropical_line(n_marks=1)).dimension == 2


def test_cone_dimension_matches_full_rank():
    for t in (
        tropical_line(),
        tropical_line(2),
        balanced_triangle(),
        unrealizable_triangle(),
        smooth_cubic_type(),
        nodal_cubic_type(),
    ):
        assert cone_dimension(t) == dimension_via_full_matrix(t)


def test_triangle_cone():
    t = balanced_triangle()
    assert check_balancing(t) is None
    cone = cone_of(t)
    assert cone.dimension == 3  # translations plus one scale
    assert cone.realizable


def test_unrealizable_cycle_detected():
    t = unrealizable_triangle()
    assert check_balancing(t) is None
    assert not is_realizable(t)


def test_cone_rejects_unbalanced():
    bad = CombinatorialType(weights=(0,), edges=(), legs=(Leg(0, (1, 1)), Leg(0, (-1, 0))))
    with pytest.raises(ValueError):
        cone_of(bad)


def test_expected_dimension_examples():
    t1 = smooth_cubic_type()  # weightless 3-valent, genus 1, |nabla|=9
    assert expected_dimension(t1) == 9
    t0 = nodal_cubic_type()  # genus 0: chi = 1
    assert expected_dimension(t0) == 8
    # merging the endpoints of a middle-floor edge makes one 4-valent vertex
    t4 = face_contract(t0, [1])
    assert expected_dimension(t4) == 7


def test_mikhbound_dimension_for_nice_types():
    t1 = smooth_cubic_type()
    assert t1.is_immersed()
    assert cone_dimension(t1) == 9 + 0 + 1 - 1
    assert is_regular(t1)
    assert cone_of(t1).realizable
    t0 = nodal_cubic_type()
    assert t0.is_immersed()
    assert cone_dimension(t0) == 8
    assert is_regular(t0)
    assert cone_of(t0).realizable


def test_classify_line_and_marked_line():
    assert classify(tropical_line()).is_nice()
    wall = classify(tropical_line(n_marks=1))
    assert wall.is_simple_wall()
    assert wall.four_valent_vertex == 0
    weighted = CombinatorialType((1,), (), (Leg(0, (1, 1)), Leg(0, (-1, 0)), Leg(0, (0, -1))))
    assert classify(weighted).kind == "other"
    assert classify(smooth_cubic_type()).is_nice()
    assert classify(nodal_cubic_type()).is_nice()


def test_resolve_wall_marked_line():
    t = tropical_line(n_marks=1)
    out = resolve_wall(t)
    assert len(out) == 3
    for new_t, new_edge in out:
        assert check_balancing(new_t) is None
        assert types_isomorphic(face_contract(new_t, [new_edge]), t)


def test_resolve_wall_opposite_slopes_gives_contracted_edge():
    t = CombinatorialType(
        weights=(0,),
        edges=(),
        legs=(Leg(0, (0, 1)), Leg(0, (0, -1)), Leg(0, (1, 0)), Leg(0, (-1, 0))),
    )
    assert classify(t).is_simple_wall()
    out = resolve_wall(t)
    contracted = [new_t for new_t, e in out if new_t.edges[e].slope == (0, 0)]
    assert len(contracted) == 1  # pairing the two vertical germs


def test_resolve_wall_rejects_nice():
    with pytest.raises(ValueError):
        resolve_wall(tropical_line())


def test_split_vertex_moves_germs():
    t = tropical_line(n_marks=1)
    star = t.star(0)
    mark = [d for s, d in star if s == (0, 0)][0]
    ray = [d for s, d in star if s == (1, 1)][0]
    new_t, new_edge = split_vertex(t, 0, [mark, ray])
    assert new_t.n_vertices() == 2
    assert new_t.edges[new_edge].slope == (1, 1)
    assert check_balancing(new_t) is None


def test_split_vertex_with_loop_germ():
    # a loop plus a pass-through: moving one loop germ opens the loop
    t = CombinatorialType(
        weights=(0,),
        edges=(Edge(0, 0),),
        legs=(Leg(0, (1, 0)), Leg(0, (-1, 0))),
    )
    star = t.star(0)
    loop_germ = [d for _, d in star if d[0] == "edge"][0]
    right = [d for s, d in star if s == (1, 0)][0]
    new_t, new_edge = split_vertex(t, 0, [loop_germ, right])
    assert check_balancing(new_t) is None
    assert not new_t.edges[0].is_loop()


def test_lower_bound_property_on_fixtures():
    for t in (tropical_line(), smooth_cubic_type(), nodal_cubic_type(), balanced_triangle()):
        assert cone_dimension(t) >= expected_dimension(t)

from fractions import Fraction as F

import pytest

from fixtures import smooth_cubic_curve, smooth_cubic_type

from tropcurves.errors import ScaleRefusal
from tropcurves.floors import (
    Elevator,
    FloorDiagram,
    NotFloorDecomposed,
    count_severi,
    decompose,
    diagram_curve,
    enumerate_curves,
    is_vertically_stretched,
    make_stretched,
    parse_diagram,
    top_floor_check,
)
from tropcurves.graphs import CombinatorialType, Edge, Leg, ParametrizedCurve, genus
from tropcurves.recursion import irreducible_severi_degree


def test_make_stretched_witness():
    cfg = make_stretched(2, 1)
    assert len(cfg.points) == 2
    assert is_vertically_stretched(cfg.points, cfg.stretch)
    assert cfg.mu == F((3 * 1) ** 3 * 2)
    cfg = make_stretched(8, 3)
    assert is_vertically_stretched(cfg.points, cfg.stretch)
    # dropping the slope witness far enough fails
    assert not is_vertically_stretched(((0, 0), (1, 1)), F(2))


def test_unique_line_through_two_points():
    cfg = make_stretched(2, 1)
    sols = enumerate_curves(1, 0, cfg)
    assert len(sols) == 1
    diag, curve = sols[0]
    assert genus(curve.ctype) == 0
    assert curve.evaluate() == cfg.points
    assert top_floor_check(diag)


def test_unique_genus_one_cubic():
    cfg = make_stretched(9, 3)
    sols = enumerate_curves(3, 1, cfg)
    assert len(sols) == 1
    diag, curve = sols[0]
    assert genus(curve.ctype) == 1
    assert curve.multiplicity() == 1


def test_twelve_rational_cubics():
    cfg = make_stretched(8, 3)
    sols = enumerate_curves(3, 0, cfg)
    assert sum(c.multiplicity() for _d, c in sols) == 12
    assert len(sols) == 9
    for diag, curve in sols:
        assert curve.evaluate() == cfg.points
        assert top_floor_check(diag)


def test_counts_match_oracle_small():
    assert count_severi(1, 0) == 1
    assert count_severi(2, 0) == 1
    assert count_severi(3, 0) == 12
    assert count_severi(3, 1) == 1
    for d in (1, 2, 3):
        for g in range(0, (d - 1) * (d - 2) // 2 + 1):
            assert count_severi(d, g) == irreducible_severi_degree(d, g)


def test_scale_refusal():
    with pytest.raises(ScaleRefusal):
        count_severi(6, 0)


def test_decompose_constructed_solutions():
    cfg = make_stretched(8, 3)
    for diag, curve in enumerate_curves(3, 0, cfg):
        dec = decompose(curve)
        assert dec.problems == ()
        assert dec.diagram is not None
        assert len(dec.floors) == 3
        # round trip: the decomposition recovers the marked diagram
        assert dec.diagram == diag


def test_decompose_tropical_line():
    cfg = make_stretched(2, 1)
    [(diag, curve)] = enumerate_curves(1, 0, cfg)
    dec = decompose(curve)
    assert len(dec.floors) == 1
    assert dec.diagram.elevators[0].bottom == -1  # a downward leg elevator
    assert dec.diagram == diag


def test_decompose_rejects_bad_slope():
    t = CombinatorialType(
        weights=(0, 0),
        edges=(Edge(0, 1, (2, 1)),),
        legs=(
            Leg(0, (-1, 0)),
            Leg(0, (-1, -1)),
            Leg(1, (1, 1)),
            Leg(1, (0, 1)),
        ),
    )
    curve = ParametrizedCurve(t, lengths=(F(1),), positions=((F(0), F(0)), (F(2), F(1))))
    with pytest.raises(NotFloorDecomposed) as err:
        decompose(curve)
    assert err.value.slope == (2, 1)


def test_decompose_unmarked_cubic_reports_structure():
    dec = decompose(smooth_cubic_curve())
    assert len(dec.floors) == 3
    assert len(dec.elevators) == 3
    assert dec.diagram is None  # no marks anywhere
    assert dec.problems != ()


def test_diagram_text_round_trip():
    cfg = make_stretched(8, 3)
    for diag, _curve in enumerate_curves(3, 0, cfg):
        assert parse_diagram(diag.text()) == diag


def test_top_floor_check_hand_built():
    bad = FloorDiagram(
        2,
        0,
        (2, 1),
        (
            Elevator(2, 1, 1, 3),
            Elevator(2, -1, 1, 4),
            Elevator(1, -1, 1, 5),
        ),
    )
    assert not top_floor_check(bad)  # two elevators touch the top floor


def test_diagram_curve_rejects_impossible_marking():
    # elevator marked above its upper floor: no curve
    diag = FloorDiagram(
        2,
        0,
        (2, 3),
        (
            Elevator(2, 1, 1, 1),
            Elevator(1, -1, 1, 4),
            Elevator(1, -1, 1, 5),
        ),
    )
    cfg = make_stretched(5, 2)
    assert diagram_curve(diag, cfg) is None


def test_marking_bijection_invariant():
    cfg = make_stretched(10, 3)
    # n = 3d + g - 1 must match
    with pytest.raises(ValueError):
        enumerate_curves(3, 0, cfg)

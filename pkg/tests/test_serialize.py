from fractions import Fraction as F

from fixtures import smooth_cubic_curve, smooth_cubic_type, tropical_line

from tropcurves.cones import cone_of
from tropcurves.evaluation import PointConfiguration, fiber
from tropcurves.graphs import TropicalGraph
from tropcurves.serialize import (
    cone_to_json,
    config_from_json,
    config_to_json,
    curve_from_json,
    curve_to_json,
    dumps,
    fiber_to_json,
    frac_str,
    graph_from_json,
    graph_to_json,
    parse_frac,
    type_from_json,
    type_to_json,
)


def test_fraction_round_trip():
    for x in (F(1), F(-3), F(7, 2), F(-22, 7), F(0)):
        assert parse_frac(frac_str(x)) == x
    assert frac_str(F(4, 2)) == "2"
    assert frac_str(F(1, 3)) == "1/3"


def test_graph_round_trip_preserves_leg_order():
    g = TropicalGraph(weights=(0, 1), edges=((0, 1),), lengths=(F(5, 3),), legs=(1, 0, 1))
    g2 = graph_from_json(graph_to_json(g))
    assert g2 == g
    assert g2.legs == (1, 0, 1)


def test_type_round_trip():
    for t in (tropical_line(2), smooth_cubic_type()):
        assert type_from_json(type_to_json(t)) == t


def test_curve_round_trip():
    c = smooth_cubic_curve()
    assert curve_from_json(curve_to_json(c)) == c


def test_config_round_trip():
    cfg = PointConfiguration(((F(1), F(-7, 3)), (F(2), F(5))))
    assert config_from_json(config_to_json(cfg)) == cfg


def test_cone_export_deterministic():
    cone = cone_of(smooth_cubic_type())
    blob1 = dumps(cone_to_json(cone))
    blob2 = dumps(cone_to_json(cone_of(smooth_cubic_type())))
    assert blob1 == blob2
    data = cone_to_json(cone)
    assert data["dimension"] == 9
    assert data["classification"] == "nice"


def test_fiber_export():
    from tropcurves.corpus import _attach_mark

    base = tropical_line()
    t1 = _attach_mark(base, ("leg", 0))
    t2 = _attach_mark(t1, ("leg", 2))
    cfg = PointConfiguration(((3, 5), (-5, -1)))
    fb = fiber(t2, cfg)
    data = fiber_to_json(fb)
    assert data["kind"] == "point"
    assert data["inside"] is True

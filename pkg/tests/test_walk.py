from fractions import Fraction as F

import pytest

from tropcurves.canonical import types_isomorphic
from tropcurves.cones import classify, resolve_wall
from tropcurves.evaluation import fiber
from tropcurves.floors import make_stretched
from tropcurves.graphs import CombinatorialType, Leg, face_contract
from tropcurves.walk import (
    StarVerdict,
    Terminal,
    WalkError,
    advance,
    check_harmonic_or_lcs,
    cross,
    run_walk,
    start_walk,
)


def test_start_walk_d2():
    state = start_walk(2, 0)
    assert state.floor_index == 1  # E attaches to the bottom floor at once
    assert classify(state.ctype).is_nice()
    assert len(state.fixed) == 4


def test_start_walk_d3_genus1():
    state = start_walk(3, 1)
    assert state.floor_index in (1, 2)
    assert classify(state.ctype).is_nice()


def test_start_walk_rejects_degree_one():
    with pytest.raises(ValueError):
        start_walk(1, 0)


def test_start_walk_rejects_unstretched():
    from tropcurves.evaluation import PointConfiguration
    from tropcurves.floors import StretchedConfig

    pts = tuple((F(i), F(-i)) for i in range(1, 6))
    cfg = StretchedConfig(PointConfiguration(pts), stretch=F(1, 2))
    with pytest.raises((ValueError, WalkError)):
        run_walk(2, 0, cfg)


def test_advance_reaches_simple_wall():
    state = start_walk(2, 0)
    at_wall, event = advance(state)
    assert not isinstance(event, Terminal)
    assert classify(event.wall_type).is_simple_wall()
    assert event.kind in (
        "elevator_meets_marked_point",
        "elevator_meets_elevator",
        "elevator_meets_floor_vertex",
    )
    # exactly one vanished length at the wall
    assert sum(1 for l in at_wall.lengths if l == 0) == 1


def test_walk_terminates_all_small_cases():
    for d, g in [(2, 0), (3, 0), (3, 1)]:
        trace = run_walk(d, g)
        assert isinstance(trace.terminal, Terminal)
        t = trace.terminal.stratum
        assert t.edges[trace.terminal.free_edge].slope == (0, 0)
        # strict lexicographic descent
        for a, b in zip(trace.invariants, trace.invariants[1:]):
            assert b < a


def test_terminal_ray_moves_only_the_contracted_edge():
    trace = run_walk(3, 1)
    term = trace.terminal
    nv = term.stratum.n_vertices()
    ray = term.ray
    # vertex positions constant along the ray
    assert all(ray[j] == 0 for j in range(2 * nv))
    moving = [i for i in range(len(term.stratum.edges)) if ray[2 * nv + i] != 0]
    assert moving == [term.free_edge]


def test_terminal_fiber_is_unbounded_interval():
    trace = run_walk(2, 0)
    term = trace.terminal
    fb = fiber(term.stratum, trace_fixed_config(2, 0))
    assert fb.kind == "interval"
    assert not fb.bounded


def trace_fixed_config(d, g):
    # mirror of start_walk's bookkeeping: drop the mobile point
    from tropcurves.evaluation import PointConfiguration
    from tropcurves.floors import enumerate_curves

    cfg = make_stretched(3 * d + g - 1, d)
    sols = enumerate_curves(d, g, cfg)
    diag, _curve = sols[0]
    top = [e for e in diag.elevators if e.top == diag.d][0]
    return PointConfiguration(
        tuple(p for i, p in enumerate(cfg.points) if i != top.mark - 1)
    )


def test_case_two_descent_at_d3():
    # scanning the nine rational cubics, one start meets a weight-2
    # elevator with r = 1 and runs the three-wall descent
    traces = [run_walk(3, 0, seed=s) for s in range(9)]
    case2 = [
        tr
        for tr in traces
        if any(e[0] == "cross" and e[1] == "descend" for e in tr.events)
    ]
    assert case2, "no start exercised the heavy-elevator descent"
    tr = case2[0]
    ks = [inv[0] for inv in tr.invariants]
    assert ks[-1] < ks[0]  # the descent lowered the host floor


def test_walls_resolve_and_contract_back():
    trace = run_walk(3, 0, seed=8)
    assert trace.walls
    for wall in trace.walls:
        cls = classify(wall)
        assert cls.is_simple_wall()
        for new_t, new_e in resolve_wall(wall):
            assert types_isomorphic(face_contract(new_t, [new_e]), wall)


def test_fig7_wall_has_contracted_resolution():
    # in every trace's base-case wall, two germs have opposite slopes and
    # one resolution carries a contracted new edge
    trace = run_walk(2, 0)
    last_wall = trace.walls[-1]
    out = resolve_wall(last_wall)
    assert any(new_t.edges[e].slope == (0, 0) for new_t, e in out)


def test_harmonic_star():
    from fixtures import tropical_line

    base = tropical_line()
    germs = [(base, (F(1), F(2))), (base, (F(-1), F(-2)))]
    verdict = check_harmonic_or_lcs(base, germs)
    assert verdict.mode == "harmonic" and verdict.ok
    bad = check_harmonic_or_lcs(base, [(base, (F(1), F(0)))])
    assert bad.mode == "harmonic" and not bad.ok


def test_lcs_star():
    from fixtures import tropical_line

    wall = tropical_line(n_marks=1)
    res = resolve_wall(wall)
    germs = [(t, (F(1),)) for t, _e in res]
    verdict = check_harmonic_or_lcs(wall, germs)
    assert verdict.mode == "locally_combinatorially_surjective" and verdict.ok
    partial = check_harmonic_or_lcs(wall, [(res[0][0], (F(1),)), (res[1][0], (F(1),))])
    assert not partial.ok
    assert partial.witness  # the missing stratum is reported

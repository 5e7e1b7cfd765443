"""The elevator-moving walk through the moduli space.

Starting from a floor decomposed solution through n stretched points,
one marked point is declared mobile and slid horizontally.  The curve
moves along the one-dimensional evaluation fiber of its nice stratum
until an edge length vanishes: a simple wall, where the mobile elevator
E becomes adjacent to a 4-valent vertex.  Crossing the wall follows a
case analysis on the pair (k, r) -- the index of E's host floor and the
number of special points between E and the nearest downward elevator --
which strictly decreases lexicographically until a stratum with an
unbounded contracted edge is reached: the genus-drop witness.

Everything is exact; every wall is re-checked to be a simple wall, every
crossing is re-checked to contract back to its wall, and the terminal
ray is certified to move nothing but one contracted edge length.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from tropcurves.canonical import canonical_key
from tropcurves.cones import (
    classify,
    expand_lengths,
    path_coefficients,
    reduced_fiber_polyhedron,
    split_vertex,
)
from tropcurves.evaluation import PointConfiguration
from tropcurves.floors import decompose, enumerate_curves, make_stretched
from tropcurves.graphs import (
    CombinatorialType,
    Edge,
    Leg,
    ParametrizedCurve,
    face_contract,
)
from tropcurves.linalg import solve_affine

F = Fraction


class WalkError(RuntimeError):
    """An invariant of the walk failed; this would falsify the induction."""


@dataclass(frozen=True)
class WallEvent:
    kind: str  # elevator_meets_marked_point | elevator_meets_elevator | elevator_meets_floor_vertex
    wall_type: CombinatorialType
    four_valent_vertex: int
    parameter: Fraction  # motion parameter at which the wall is hit


@dataclass(frozen=True)
class Terminal:
    """The genus-drop witness: one contracted edge of unbounded length."""

    stratum: CombinatorialType
    free_edge: int
    ray: tuple


@dataclass(frozen=True)
class WalkState:
    ctype: CombinatorialType  # n-1 contracted legs, mobile point unmarked
    lengths: tuple  # current point of the closed cone (entry wall: one zero)
    direction: tuple  # motion direction in length coordinates
    fixed: PointConfiguration  # the n-1 pinned points
    mobile: tuple  # current mobile point position
    elevator: int  # edge index of E
    floor_index: int  # k: host floor of E, counted from the bottom
    ladder: int  # r
    trace: tuple = ()

    def interior_curve(self):
        """A curve strictly inside the stratum along the motion ray."""
        step = _first_positive_ratio(self.lengths, self.direction)
        t = F(1) if step is None else step / 2
        lengths = tuple(a + t * b for a, b in zip(self.lengths, self.direction))
        return _curve_from_lengths(self.ctype, self.fixed, lengths)


def _curve_from_lengths(t, cfg, lengths):
    coeffs = path_coefficients(t)
    full = expand_lengths(t, cfg.points, coeffs, list(lengths))
    nv = t.n_vertices()
    positions = tuple((full[2 * v], full[2 * v + 1]) for v in range(nv))
    return ParametrizedCurve(t, tuple(lengths), positions)


def _first_positive_ratio(lengths, direction):
    best = None
    for l, d in zip(lengths, direction):
        if d < 0:
            ratio = -l / d
            if best is None or ratio < best:
                best = ratio
    return best


def _fiber_line(t, cfg):
    """(base lengths, direction) of the one-dimensional fiber of t."""
    P, _coeffs = reduced_fiber_polyhedron(t, cfg.points)
    rows = [list(row) for row in P.rows]
    rhs = list(P.rhs)
    if not rows:
        rows = [[F(0)] * P.n]
        rhs = [F(0)]
    sol = solve_affine(rows, rhs)
    if sol is None:
        raise WalkError("evaluation fiber is empty")
    base, basis = sol
    if len(basis) != 1:
        raise WalkError(f"fiber dimension {len(basis)} inside a nice stratum, expected 1")
    return base, basis[0]


def _position_component(t, cfg, lengths, direction, vertex, coord):
    """d/dt of a vertex coordinate along the fiber direction."""
    coeffs = path_coefficients(t)
    a = expand_lengths(t, cfg.points, coeffs, list(lengths))
    b = expand_lengths(t, cfg.points, coeffs, [x + y for x, y in zip(lengths, direction)])
    return b[2 * vertex + coord] - a[2 * vertex + coord]


# ---------------------------------------------------------------------------
# structural bookkeeping: floors, elevators, ladders
# ---------------------------------------------------------------------------


def _elevator_foot(t, curve, edge_index):
    """(foot vertex, top vertex) of a vertical edge, by height."""
    e = t.edges[edge_index]
    if curve.positions[e.u][1] <= curve.positions[e.v][1]:
        return e.u, e.v
    return e.v, e.u


def _floor_data(curve):
    dec = decompose(curve)
    floor_of = {}
    for idx, vs in enumerate(dec.floors, start=1):
        for v in vs:
            floor_of[v] = idx
    return dec, floor_of


def _ladder(state, curve):
    """(k, r, target x, nearest downward elevator edge) for the state."""
    t = state.ctype
    dec, floor_of = _floor_data(curve)
    foot, _top = _elevator_foot(t, curve, state.elevator)
    if foot not in floor_of:
        raise WalkError("mobile elevator foot is not on a floor")
    k = floor_of[foot]
    x_e = curve.positions[foot][0]
    # downward elevator attachments on floor k (vertical germ pointing down)
    floor_vertices = set(dec.floors[k - 1])
    candidates = []
    for i, e in enumerate(t.edges):
        if i == state.elevator or e.slope[0] != 0 or e.slope[1] == 0:
            continue
        fo, to = _elevator_foot(t, curve, i)
        if to in floor_vertices:
            candidates.append((abs(curve.positions[to][0] - x_e), curve.positions[to][0], i))
    for j, leg in enumerate(t.legs):
        if leg.slope[0] == 0 and leg.slope[1] < 0 and leg.vertex in floor_vertices:
            candidates.append((abs(curve.positions[leg.vertex][0] - x_e), curve.positions[leg.vertex][0], None))
    candidates = [c for c in candidates if c[0] > 0]
    if not candidates:
        raise WalkError(f"floor {k} has no other downward elevator")
    candidates.sort(key=lambda c: (c[0], -c[1]))  # nearest; ties prefer the right
    _dist, x_target, _edge = candidates[0]
    lo, hi = min(x_e, x_target), max(x_e, x_target)
    specials = set()
    for v in floor_vertices:
        x = curve.positions[v][0]
        if lo < x <= hi if x_target > x_e else lo <= x < hi:
            specials.add(x)
    r = len(specials)
    return k, r, x_target


# ---------------------------------------------------------------------------
# the walk operations
# ---------------------------------------------------------------------------


def start_walk(d, g, cfg=None, seed=0):
    """Initial walk state: a floor decomposed solution with its top-floor
    elevator's marked point declared mobile."""
    if d < 2:
        raise ValueError("the walk needs a non-top floor; degree 1 has a single floor")
    n = 3 * d + g - 1
    if cfg is None:
        cfg = make_stretched(n, d)
    sols = enumerate_curves(d, g, cfg)
    if not sols:
        raise ValueError("no floor decomposed solution: configuration is not stretched")
    diag, curve = sols[seed % len(sols)]
    top = [e for e in diag.elevators if e.top == diag.d]
    if len(top) != 1 or top[0].weight != 1:
        raise WalkError("top floor elevator is not unique of weight one")
    mobile_mark = top[0].mark
    mobile_point = cfg.points[mobile_mark - 1]
    new_curve, e_map = _forget_mark(curve, mobile_mark - 1)
    elevator = e_map_for_top_elevator(curve, new_curve, e_map, mobile_mark)
    fixed = PointConfiguration(tuple(p for i, p in enumerate(cfg.points) if i != mobile_mark - 1))
    t = new_curve.ctype
    cls = classify(t)
    if not cls.is_nice():
        raise WalkError("initial stratum is not nice")
    base, v = _fiber_line(t, fixed)
    state = WalkState(
        ctype=t,
        lengths=tuple(new_curve.lengths),
        direction=v,
        fixed=fixed,
        mobile=mobile_point,
        elevator=elevator,
        floor_index=0,
        ladder=0,
        trace=(),
    )
    k, r, x_target = _ladder(state, new_curve)
    foot, _ = _elevator_foot(t, new_curve, elevator)
    dx = _position_component(t, fixed, state.lengths, v, foot, 0)
    if dx == 0:
        raise WalkError("fiber direction does not move the mobile elevator")
    sign = 1 if (x_target - new_curve.positions[foot][0]) > 0 else -1
    if (dx > 0) != (sign > 0):
        v = tuple(-x for x in v)
    state = replace(state, direction=tuple(v), floor_index=k, ladder=r)
    return state


def e_map_for_top_elevator(curve, new_curve, e_map, mobile_mark):
    """Locate E in the mark-forgotten curve: the edge whose image contains
    the mobile point."""
    t = new_curve.ctype
    px, py = curve.positions[curve.ctype.legs[mobile_mark - 1].vertex]
    for i, e in enumerate(t.edges):
        if e.slope[0] != 0 or e.slope[1] == 0:
            continue
        (ux, uy) = new_curve.positions[e.u]
        (vx, vy) = new_curve.positions[e.v]
        if ux == px and min(uy, vy) <= py <= max(uy, vy):
            return i
    raise WalkError("mobile elevator not found after forgetting its mark")


def _forget_mark(curve, leg_index):
    """Remove a contracted leg and stabilize the 2-valent vertex it leaves.

    Returns (curve, edge_map) where edge_map sends old edge indices to new
    ones (merged edges map to the merged index).
    """
    t = curve.ctype
    host = t.legs[leg_index].vertex
    legs = [leg for j, leg in enumerate(t.legs) if j != leg_index]
    others = [j for j, leg in enumerate(t.legs) if j != leg_index and leg.vertex == host]
    incident = [
        (i, e) for i, e in enumerate(t.edges) if e.u == host or e.v == host
    ]
    if t.weights[host] != 0 or len(incident) + len(others) != 2 or len(incident) != 2:
        # nothing to stabilize: just drop the leg
        t2 = CombinatorialType(t.weights, t.edges, tuple(legs))
        return ParametrizedCurve(t2, curve.lengths, curve.positions), {
            i: i for i in range(len(t.edges))
        }
    (i1, e1), (i2, e2) = incident
    # merge e1 and e2 through host; orientation via the far endpoints
    a = e1.v if e1.u == host else e1.u
    b = e2.v if e2.u == host else e2.u
    slope_a_to_host = e1.slope if e1.u == a else (-e1.slope[0], -e1.slope[1])
    new_edge = Edge(a, b, slope_a_to_host)
    new_len = curve.lengths[i1] + curve.lengths[i2]
    edges = []
    lengths = []
    edge_map = {}
    for i, e in enumerate(t.edges):
        if i in (i1, i2):
            continue
        edge_map[i] = len(edges)
        edges.append(e)
        lengths.append(curve.lengths[i])
    merged_index = len(edges)
    edge_map[i1] = merged_index
    edge_map[i2] = merged_index
    edges.append(new_edge)
    lengths.append(new_len)
    # drop the host vertex, renumbering everything above it
    drop = host

    def ren(v):
        return v - 1 if v > drop else v

    edges = tuple(Edge(ren(e.u), ren(e.v), e.slope) for e in edges)
    legs = tuple(Leg(ren(leg.vertex), leg.slope) for leg in legs)
    weights = tuple(w for v, w in enumerate(t.weights) if v != drop)
    positions = tuple(p for v, p in enumerate(curve.positions) if v != drop)
    t2 = CombinatorialType(weights, edges, legs)
    return ParametrizedCurve(t2, tuple(lengths), positions), edge_map


def advance(state: WalkState):
    """Move along the fiber direction to the next wall, or detect the
    terminal ray."""
    step = _first_positive_ratio(state.lengths, state.direction)
    if step is None:
        return _terminal(state)
    wall_lengths = tuple(a + step * b for a, b in zip(state.lengths, state.direction))
    vanished = [i for i, l in enumerate(wall_lengths) if l == 0 and state.direction[i] < 0]
    if len(vanished) != 1:
        raise WalkError(f"{len(vanished)} lengths vanish simultaneously; wall is not simple")
    dead = vanished[0]
    t = state.ctype
    wall_type, vmap, emap, _lmap = face_contract(t, [dead], with_maps=True)
    cls = classify(wall_type)
    if not cls.is_simple_wall():
        raise WalkError(f"wall stratum classified as {cls.kind}")
    u = cls.four_valent_vertex
    e_new = emap.get(state.elevator)
    if e_new is None:
        raise WalkError("the mobile elevator itself collapsed")
    we = wall_type.edges[e_new]
    if we.u != u and we.v != u:
        raise WalkError("wall vertex is not adjacent to the mobile elevator")
    kind = _event_kind(wall_type, u, e_new)
    event = WallEvent(kind=kind, wall_type=wall_type, four_valent_vertex=u, parameter=step)
    at_wall = replace(state, lengths=wall_lengths)
    return at_wall, event


def _terminal(state: WalkState):
    """Certify the unbounded direction as a genus-drop witness."""
    t = state.ctype
    moving = [i for i, d in enumerate(state.direction) if d != 0]
    if len(moving) != 1 or t.edges[moving[0]].slope != (0, 0):
        raise WalkError("terminal ray moves more than one contracted edge length")
    free_edge = moving[0]
    # vertex positions must be constant along the ray
    coeffs = path_coefficients(t)
    a = expand_lengths(t, state.fixed.points, coeffs, list(state.lengths))
    b = expand_lengths(
        t,
        state.fixed.points,
        coeffs,
        [x + y for x, y in zip(state.lengths, state.direction)],
    )
    nv = t.n_vertices()
    if any(a[j] != b[j] for j in range(2 * nv)):
        raise WalkError("terminal ray moves vertex positions")
    ray = tuple(y - x for x, y in zip(a, b))
    return state, Terminal(stratum=t, free_edge=free_edge, ray=ray)


def _event_kind(wall_type, u, elevator_edge):
    germs = wall_type.star(u)
    has_mark = any(s == (0, 0) and d[0] == "leg" for s, d in germs)
    verticals = [
        (s, d)
        for s, d in germs
        if s[0] == 0 and s[1] != 0 and not (d[0] == "edge" and d[1] == elevator_edge)
    ]
    if has_mark:
        return "elevator_meets_marked_point"
    if verticals:
        return "elevator_meets_elevator"
    return "elevator_meets_floor_vertex"


def _germ_of_edge(wall_type, u, edge_index):
    for s, d in wall_type.star(u):
        if d[0] == "edge" and d[1] == edge_index:
            return s, d
    raise WalkError("edge germ not found at wall vertex")


def cross(state: WalkState, event: WallEvent, choice: str):
    """Resolve the wall per the case analysis and enter the next stratum.

    choice: "continue" slides E past the met special point (case r > 1);
    "merge" attaches E to the met object (base case and the descent with
    a heavy elevator).
    """
    if choice not in ("continue", "merge", "descend", "land"):
        raise ValueError("choice must be continue, merge, descend, or land")
    t = state.ctype
    dead = [i for i, l in enumerate(state.lengths) if l == 0]
    if len(dead) != 1:
        raise WalkError("cross expects a state sitting on its wall")
    dead = dead[0]
    wall_type, vmap, emap, _lmap = face_contract(t, [dead], with_maps=True)
    u = event.four_valent_vertex
    e_idx = emap[state.elevator]
    _e_germ, e_desc = _germ_of_edge(wall_type, u, e_idx)
    germs = wall_type.star(u)
    others = [(s, d) for s, d in germs if d != e_desc]
    if len(others) != 3:
        raise WalkError("wall vertex is not 4-valent")
    if choice == "merge":
        met = _met_germ(others)
        moving = [met[1], e_desc]
    elif choice == "descend":
        down = [(s, d) for s, d in others if s[0] == 0 and s[1] < 0]
        if not down:
            raise WalkError("no downward germ to descend along")
        moving = [down[0][1], e_desc]
    elif choice == "land":
        floor_right = [(s, d) for s, d in others if s[0] > 0]
        if not floor_right:
            raise WalkError("no rightward floor germ to land beside")
        moving = [floor_right[0][1], e_desc]
    else:
        met = _met_germ(others)
        floor_side = [(s, d) for s, d in others if d != met[1]]
        moving = [e_desc, _far_floor_germ(state, floor_side)[1]]
    new_type, new_edge = split_vertex(wall_type, u, moving)
    lengths = [F(0)] * len(new_type.edges)
    for old, new in emap.items():
        lengths[new] = state.lengths[old]
    lengths[new_edge] = F(0)
    direction = _direction_away_from_wall(new_type, state.fixed, new_edge)
    # E keeps its index: split_vertex preserves edge numbering
    new_elevator = emap[state.elevator]
    return WalkState(
        ctype=new_type,
        lengths=tuple(lengths),
        direction=direction,
        fixed=state.fixed,
        mobile=state.mobile,
        elevator=new_elevator,
        floor_index=state.floor_index,
        ladder=state.ladder,
        trace=state.trace,
    )


def _direction_away_from_wall(new_type, fixed, new_edge):
    _base, v = _fiber_line(new_type, fixed)
    if v[new_edge] == 0:
        raise WalkError("fiber direction ignores the resolving edge")
    if v[new_edge] < 0:
        v = [-x for x in v]
    return tuple(v)


def _met_germ(others):
    """The germ of the object E collided with: a mark, or another vertical."""
    mark = [(s, d) for s, d in others if s == (0, 0) and d[0] == "leg"]
    if mark:
        return mark[0]
    vertical = [(s, d) for s, d in others if s[0] == 0 and s[1] != 0]
    if vertical:
        return vertical[0]
    raise WalkError("no met object at the wall vertex")


def _far_floor_germ(state, floor_side):
    """Of the two floor germs at the wall vertex, the one pointing in the
    motion direction of E."""
    foot_dx = _wall_motion_sign(state)
    for s, d in floor_side:
        if s[0] != 0 and (s[0] > 0) == (foot_dx > 0):
            return (s, d)
    raise WalkError("no floor germ on the far side")


def _wall_motion_sign(state):
    t = state.ctype
    # E's foot is an endpoint of the dead edge; its x-motion sign equals
    # the direction's effect on that vertex
    dead = [i for i, l in enumerate(state.lengths) if l == 0][0]
    e = t.edges[dead]
    for vertex in (e.u, e.v):
        dx = _position_component(t, state.fixed, state.lengths, state.direction, vertex, 0)
        if dx != 0:
            return 1 if dx > 0 else -1
    raise WalkError("motion direction is vertically degenerate at the wall")


# ---------------------------------------------------------------------------
# the full walk
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WalkTrace:
    """Record of a full walk: strata entered, wall events, the invariant
    (k, r) at every recorded main-line state, and the terminal witness."""

    events: tuple
    invariants: tuple
    terminal: Terminal
    crossings: int
    walls: tuple  # the simple-wall types encountered


def _refresh_invariant(state):
    curve = state.interior_curve()
    k, r, _x = _ladder(state, curve)
    return replace(state, floor_index=k, ladder=r)


def run_walk(d, g, cfg=None, seed=0):
    """Drive the walk until the genus-drop witness appears.

    Raises WalkError if the lexicographic descent of (k, r) or any wall
    invariant fails, or if the a-priori step bound is exceeded.
    """
    state = start_walk(d, g, cfg, seed=seed)
    events = [("start", state.floor_index, state.ladder)]
    invariants = [(state.floor_index, state.ladder)]
    walls = []
    crossings = 0
    bound = 8 * d * (3 * d + g) + 40
    while True:
        if crossings > bound:
            raise WalkError("walk exceeded its a-priori step bound")
        at_wall, outcome = advance(state)
        if isinstance(outcome, Terminal):
            events.append(("terminal", outcome.free_edge))
            for a, b in zip(invariants, invariants[1:]):
                if not b < a:
                    raise WalkError(f"(k, r) failed to decrease: {a} -> {b}")
            return WalkTrace(
                events=tuple(events),
                invariants=tuple(invariants),
                terminal=outcome,
                crossings=crossings,
                walls=tuple(walls),
            )
        event = outcome
        walls.append(event.wall_type)
        events.append(("wall", event.kind, event.parameter))
        k, r = at_wall.floor_index, at_wall.ladder
        if r > 1:
            state = cross(at_wall, event, "continue")
            state = _refresh_invariant(state)
            events.append(("cross", "continue", state.floor_index, state.ladder))
            invariants.append((state.floor_index, state.ladder))
            crossings += 1
            continue
        # r == 1: E has reached the nearest downward elevator E'
        met_weight = _met_weight(at_wall, event)
        if met_weight == 1:
            state = cross(at_wall, event, "merge")
            events.append(("cross", "merge", "base-case"))
            crossings += 1
            # the fiber of the merged stratum must be the unbounded ray
            continue
        # heavy elevator: the three-wall descent of the induction step
        state = cross(at_wall, event, "merge")
        events.append(("cross", "merge", "descend-start"))
        crossings += 1
        at_wall2, out2 = advance(state)
        if isinstance(out2, Terminal):
            raise WalkError("descent hit a terminal ray before the mark wall")
        walls.append(out2.wall_type)
        events.append(("wall", out2.kind, out2.parameter))
        if out2.kind != "elevator_meets_marked_point":
            raise WalkError(f"descent expected the elevator mark, got {out2.kind}")
        state = cross(at_wall2, out2, "descend")
        events.append(("cross", "descend", None))
        crossings += 1
        at_wall3, out3 = advance(state)
        if isinstance(out3, Terminal):
            raise WalkError("descent hit a terminal ray before reaching the floor")
        walls.append(out3.wall_type)
        events.append(("wall", out3.kind, out3.parameter))
        state = cross(at_wall3, out3, "land")
        state = _refresh_invariant(state)
        events.append(("cross", "land", state.floor_index, state.ladder))
        invariants.append((state.floor_index, state.ladder))
        crossings += 1
        if state.floor_index >= k:
            raise WalkError(f"descent failed to lower the floor: {k} -> {state.floor_index}")


def _met_weight(at_wall, event):
    wall_type = event.wall_type
    u = event.four_valent_vertex
    emap = None
    t = at_wall.ctype
    dead = [i for i, l in enumerate(at_wall.lengths) if l == 0][0]
    _wt, _vmap, emap, _lmap = face_contract(t, [dead], with_maps=True)
    e_idx = emap[at_wall.elevator]
    _g, e_desc = _germ_of_edge(wall_type, u, e_idx)
    others = [(s, d) for s, d in wall_type.star(u) if d != e_desc]
    met = _met_germ(others)
    return abs(met[0][1]) if met[0] != (0, 0) else 1


# ---------------------------------------------------------------------------
# harmonicity / local combinatorial surjectivity of a star of germs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StarVerdict:
    mode: str  # "harmonic" | "locally_combinatorially_surjective"
    ok: bool
    witness: tuple = ()


def check_harmonic_or_lcs(base_type, germs):
    """Validate a star of germs around a point of the moduli space.

    Each germ is a pair (target type, direction vector).  When every germ
    stays in the base stratum, the directions must sum to zero
    (harmonicity).  Otherwise the base must be a simple wall and every
    one of its three resolutions must be hit by some germ (local
    combinatorial surjectivity).
    """
    from tropcurves.canonical import types_isomorphic
    from tropcurves.cones import resolve_wall

    inside = [g for g in germs if types_isomorphic(g[0], base_type)]
    if len(inside) == len(list(germs)):
        width = max((len(v) for _t, v in germs), default=0)
        total = [F(0)] * width
        for _t, v in germs:
            for i, x in enumerate(v):
                total[i] += x
        ok = all(x == 0 for x in total)
        return StarVerdict("harmonic", ok, witness=tuple(total))
    resolution_keys = {canonical_key(t) for t, _e in resolve_wall(base_type)}
    hit = {canonical_key(t) for t, _v in germs if not types_isomorphic(t, base_type)}
    missing = tuple(sorted(resolution_keys - hit))
    return StarVerdict("locally_combinatorially_surjective", not missing, witness=missing)

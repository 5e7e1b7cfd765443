"""Vertically stretched configurations, floor diagrams, and curve counts.

Through a sufficiently stretched point configuration, every solution
curve of degree d splits into d horizontal floors joined by vertical
elevators.  The combinatorics is recorded in a `FloorDiagram`: floors
ordered bottom to top, weighted elevators between them or dropping to
infinity, and one marked point on every floor and elevator.  Curves are
rebuilt from marked diagrams exactly: the elevator x-coordinates are the
x-coordinates of their marks and the floor heights are pinned by theirs.

Counting is multiplicity-weighted (the vertex |det| product); its
correctness is certified against the independent recursion oracle in
`tropcurves.recursion`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from tropcurves.errors import ScaleRefusal
from tropcurves.evaluation import PointConfiguration
from tropcurves.graphs import CombinatorialType, Edge, Leg, ParametrizedCurve

F = Fraction

DOWN = -1  # pseudo-floor index for downward infinity
UP = -2


@dataclass(frozen=True)
class Elevator:
    """A vertical connection of weight w from floor `top` down to `bottom`.

    `bottom` is DOWN for a leg falling to infinity; `top` is UP for a leg
    rising to infinity (absent for the triangle degree, kept for the data
    model).  `mark` is the index (1-based) of the marked point on it.
    """

    top: int
    bottom: int
    weight: int
    mark: int


@dataclass(frozen=True)
class FloorDiagram:
    """Floors 1..d (bottom to top) with marks, plus weighted elevators."""

    d: int
    genus: int
    floor_marks: tuple[int, ...]  # mark of floor i at index i-1
    elevators: tuple[Elevator, ...]

    def n_marks(self):
        return self.d + len(self.elevators)

    def is_connected(self):
        parent = list(range(self.d + 1))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for e in self.elevators:
            if e.top > 0 and e.bottom > 0:
                a, b = find(e.top), find(e.bottom)
                if a != b:
                    parent[a] = b
        return len({find(i) for i in range(1, self.d + 1)}) == 1

    def first_betti(self):
        bounded = sum(1 for e in self.elevators if e.top > 0 and e.bottom > 0)
        return bounded - (self.d - 1)

    def multiplicity(self):
        m = 1
        for e in self.elevators:
            if e.top > 0 and e.bottom > 0:
                m *= e.weight * e.weight
        return m

    def text(self):
        """One floor per line, elevators as weighted arcs w:Fi->Fj|down|up."""
        lines = []
        for i in range(self.d, 0, -1):
            lines.append(f"F{i}: mark={self.floor_marks[i - 1]}")
        for e in sorted(self.elevators, key=lambda e: e.mark):
            dst = "down" if e.bottom == DOWN else ("up" if e.top == UP else f"F{e.bottom}")
            src = f"F{e.top}" if e.top > 0 else "up"
            lines.append(f"{e.weight}:{src}->{dst} mark={e.mark}")
        return "\n".join(lines)


def parse_diagram(text):
    """Inverse of FloorDiagram.text()."""
    floor_marks = {}
    elevators = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("F"):
            head, markpart = line.split(":")
            idx = int(head[1:])
            floor_marks[idx] = int(markpart.split("=")[1])
        else:
            spec, markpart = line.split(" mark=")
            w, arrow = spec.split(":")
            src, dst = arrow.split("->")
            top = UP if src == "up" else int(src[1:])
            bottom = DOWN if dst == "down" else int(dst[1:])
            elevators.append(Elevator(top, bottom, int(w), int(markpart)))
    d = max(floor_marks)
    marks = tuple(floor_marks[i] for i in range(1, d + 1))
    bounded = sum(1 for e in elevators if e.top > 0 and e.bottom > 0)
    return FloorDiagram(d, bounded - (d - 1), marks, tuple(sorted(elevators, key=lambda e: e.mark)))


# ---------------------------------------------------------------------------
# stretched configurations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StretchedConfig:
    """A point configuration on the steep line y = -mu x, with witness
    stretching factor lambda."""

    config: PointConfiguration
    stretch: Fraction  # lambda
    mu: Fraction | None = None

    @property
    def points(self):
        return self.config.points

    def __len__(self):
        return len(self.config)


def is_vertically_stretched(points, stretch):
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            (x1, y1), (x2, y2) = points[i], points[j]
            if abs(y1 - y2) <= stretch * abs(x1 - x2):
                return False
    return True


def make_stretched(n, d):
    """Points (i, -mu*i), i = 1..n, with mu = (3d)^(3d) * n.

    The witness stretching factor is mu / (2n); sufficiency of this
    explicit mu is certified by exhaustive solution enumeration in the
    test suite rather than by a closed-form bound.
    """
    if n < 1:
        raise ValueError("need at least one point")
    mu = F((3 * d) ** (3 * d) * n)
    pts = tuple((F(i), -mu * i) for i in range(1, n + 1))
    cfg = StretchedConfig(PointConfiguration(pts), stretch=mu / (2 * n), mu=mu)
    assert is_vertically_stretched(cfg.points, cfg.stretch)
    return cfg


# ---------------------------------------------------------------------------
# diagram enumeration
# ---------------------------------------------------------------------------


def _weighted_shapes(d, g):
    """All connected weighted elevator shapes with per-floor divergence one.

    A shape assigns floor-to-floor elevators (from a higher floor to a
    lower one, d - 1 + g of them for Betti number g) plus weight-one legs
    dropping to infinity; the weighted out-minus-in of every floor is 1.
    """
    pairs = [(i, j) for i in range(2, d + 1) for j in range(1, i)]
    n_edges = d - 1 + g
    shapes = []
    for combo in itertools.combinations_with_replacement(pairs, n_edges):
        # weights: positive integers, divergence 1 per floor
        def assign(idx, weights):
            if idx == n_edges:
                div = [0] * (d + 1)
                for (i, j), w in zip(combo, weights):
                    div[i] += w
                    div[j] -= w
                legs = []
                ok = True
                for i in range(1, d + 1):
                    need = 1 - div[i]
                    if need < 0:
                        ok = False
                        break
                    legs.append(need)
                if ok:
                    shapes.append((combo, tuple(weights), tuple(legs)))
                return
            i, j = combo[idx]
            for w in range(1, d + 1):
                assign(idx + 1, weights + [w])

        assign(0, [])
    out = []
    seen = set()
    for combo, weights, legs in shapes:
        key = tuple(sorted(zip(combo, weights)))
        if key in seen:
            continue  # parallel edges with permuted weights repeat the shape
        seen.add(key)
        parent = list(range(d + 1))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for (i, j) in combo:
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
        if len({find(i) for i in range(1, d + 1)}) != 1:
            continue
        out.append((combo, weights, legs))
    return out


def _marked_diagrams(d, g):
    """All marked floor diagrams: linear extensions of the object poset.

    Objects are floors and elevators; floors are totally ordered top to
    bottom (the top floor's mark is the smallest), each elevator sits
    between its endpoints, legs come after their floor.  Identical
    parallel elevators and identical legs are canonicalized by sorting
    their marks, which quotients out diagram automorphisms.
    """
    for combo, weights, legs in _weighted_shapes(d, g):
        edge_list = []
        for (pair, w) in zip(combo, weights):
            edge_list.append((pair[0], pair[1], w))
        for fl in range(1, d + 1):
            for _ in range(legs[fl - 1]):
                edge_list.append((fl, DOWN, 1))
        n = d + len(edge_list)
        for floor_marks, elevator_marks in _linear_extensions(d, edge_list, n):
            elevators = []
            for (i, j, w), m in zip(edge_list, elevator_marks):
                elevators.append(Elevator(i, j, w, m))
            elevators = _canonical_elevator_marks(elevators)
            yield FloorDiagram(
                d,
                sum(1 for e in edge_list if e[1] != DOWN) - (d - 1),
                tuple(floor_marks),
                tuple(sorted(elevators, key=lambda e: e.mark)),
            )


def _canonical_elevator_marks(elevators):
    groups = {}
    for e in elevators:
        groups.setdefault((e.top, e.bottom, e.weight), []).append(e.mark)
    out = []
    for (top, bottom, w), marks in sorted(groups.items()):
        for m in sorted(marks):
            out.append(Elevator(top, bottom, w, m))
    return out


def _linear_extensions(d, edge_list, n):
    """Assign marks 1..n to floors (top-down order) and elevators."""
    # floor i gets mark f_i with f_d < f_{d-1} < ... < f_1
    # elevator k between floors: f_top < m_k < f_bottom (DOWN = +infinity)
    results = []
    marks = list(range(1, n + 1))

    def floor_mark(fl, floor_marks):
        return floor_marks[fl - 1]

    def rec(pos, floor_marks, elevator_marks, used):
        if pos > n:
            results.append((tuple(floor_marks), tuple(elevator_marks)))
            return
        # choose which object receives mark `pos`
        # next floor to place is floor (d - #placed): floors go top-down
        placed_floors = sum(1 for x in floor_marks if x is not None)
        next_floor = d - placed_floors  # floor index to place next
        if next_floor >= 1:
            fm = list(floor_marks)
            fm[next_floor - 1] = pos
            rec(pos + 1, fm, elevator_marks, used)
        for k, (top, bottom, w) in enumerate(edge_list):
            if elevator_marks[k] is not None:
                continue
            if floor_marks[top - 1] is None:
                continue  # upper floor not yet marked
            if bottom != DOWN and floor_marks[bottom - 1] is not None:
                continue  # lower floor already marked: too late
            em = list(elevator_marks)
            em[k] = pos
            rec(pos + 1, floor_marks, em, used)

    rec(1, [None] * d, [None] * len(edge_list), set())
    # deduplicate assignments that differ by permuting identical elevators
    seen = set()
    for floor_marks, elevator_marks in results:
        groups = {}
        for (top, bottom, w), m in zip(edge_list, elevator_marks):
            groups.setdefault((top, bottom, w), []).append(m)
        key = (floor_marks, tuple(sorted((k, tuple(sorted(v))) for k, v in groups.items())))
        if key in seen:
            continue
        seen.add(key)
        yield floor_marks, elevator_marks


# ---------------------------------------------------------------------------
# curve construction from a marked diagram
# ---------------------------------------------------------------------------


def _floor_profile(diag, fl, cfg):
    """Sorted attachment events and the left-edge slope profile of a floor.

    Events are (x, kind, payload): elevator departures ("down", weight),
    arrivals ("up", weight), and the floor's own mark ("mark", index).
    The slope left of all events is 0 and rises by w at a departure,
    drops by w at an arrival, reading left to right.
    """
    events = []
    for k, e in enumerate(diag.elevators):
        x = cfg.points[e.mark - 1][0]
        if e.top == fl:
            events.append((x, "down", (k, e.weight)))
        if e.bottom == fl:
            events.append((x, "up", (k, e.weight)))
    mark = diag.floor_marks[fl - 1]
    events.append((cfg.points[mark - 1][0], "mark", (mark,)))
    events.sort(key=lambda ev: ev[0])
    return events


def _floor_heights(diag, fl, cfg):
    """Piecewise data: y(x) on floor `fl` pinned by its marked point."""
    events = _floor_profile(diag, fl, cfg)
    xs = [ev[0] for ev in events]
    # slope between events: s[i] on the interval (xs[i-1], xs[i])
    slopes = [F(0)]
    for ev in events:
        ds = 0
        if ev[1] == "down":
            ds = ev[2][1]
        elif ev[1] == "up":
            ds = -ev[2][1]
        slopes.append(slopes[-1] + ds)
    # integrate from the marked point
    mark = diag.floor_marks[fl - 1]
    mx, my = cfg.points[mark - 1]
    heights = [None] * len(events)
    idx = xs.index(mx)
    heights[idx] = my
    for i in range(idx + 1, len(events)):
        heights[i] = heights[i - 1] + slopes[i] * (xs[i] - xs[i - 1])
    for i in range(idx - 1, -1, -1):
        heights[i] = heights[i + 1] - slopes[i + 1] * (xs[i + 1] - xs[i])
    return events, xs, heights, slopes


def diagram_curve(diag: FloorDiagram, cfg):
    """The unique parametrized curve of a marked diagram through cfg.

    Returns None when the diagram admits no curve over this
    configuration (an elevator length fails to be positive, or a mark
    misses its object).
    """
    points = cfg.points
    floor_data = {}
    for fl in range(1, diag.d + 1):
        floor_data[fl] = _floor_heights(diag, fl, cfg)

    vertices = []  # positions
    weights = []
    edges = []
    legs_contracted = {}  # mark index -> vertex
    legs_rest = []

    def new_vertex(pos):
        vertices.append(pos)
        weights.append(0)
        return len(vertices) - 1

    attach_vertex = {}  # (elevator index, floor) -> vertex id
    for fl in range(1, diag.d + 1):
        events, xs, heights, slopes = floor_data[fl]
        ids = []
        for i, ev in enumerate(events):
            v = new_vertex((xs[i], heights[i]))
            ids.append(v)
            if ev[1] == "mark":
                legs_contracted[ev[2][0]] = v
            else:
                attach_vertex[(ev[2][0], fl)] = v
        legs_rest.append((ids[0], (-1, 0)))
        legs_rest.append((ids[-1], (1, 1)))
        for i in range(1, len(events)):
            dx = xs[i] - xs[i - 1]
            if dx <= 0:
                return None  # coincident events: not a valid solution
            edges.append((ids[i - 1], ids[i], (1, int(slopes[i])), dx))

    for k, e in enumerate(diag.elevators):
        x = points[e.mark - 1][0]
        qy = points[e.mark - 1][1]
        top_v = attach_vertex[(k, e.top)]
        y_top = vertices[top_v][1]
        mark_v = new_vertex((x, qy))
        legs_contracted[e.mark] = mark_v
        if qy >= y_top:
            return None  # the mark must lie strictly below the upper floor
        edges.append((top_v, mark_v, (0, -e.weight), (y_top - qy) / e.weight))
        if e.bottom == DOWN:
            legs_rest.append((mark_v, (0, -1)))
        else:
            bot_v = attach_vertex[(k, e.bottom)]
            y_bot = vertices[bot_v][1]
            if y_bot >= qy:
                return None
            edges.append((mark_v, bot_v, (0, -e.weight), (qy - y_bot) / e.weight))

    n = diag.n_marks()
    if sorted(legs_contracted) != list(range(1, n + 1)):
        return None
    leg_tuple = [Leg(legs_contracted[m], (0, 0)) for m in range(1, n + 1)]
    leg_tuple += [Leg(v, s) for v, s in sorted(legs_rest, key=lambda t: (t[1], t[0]))]
    ctype = CombinatorialType(
        weights=tuple(weights),
        edges=tuple(Edge(u, v, s) for u, v, s, _l in edges),
        legs=tuple(leg_tuple),
    )
    lengths = tuple(l for _u, _v, _s, l in edges)
    positions = tuple(vertices)
    try:
        curve = ParametrizedCurve(ctype, lengths, positions)
    except ValueError:
        return None
    return curve


def enumerate_curves(d, g, cfg):
    """All genus-g degree-d curves through a stretched configuration.

    cfg must carry 3d + g - 1 points; every solution is floor decomposed
    and is produced from its marked floor diagram.
    """
    if g < 0 or g > (d - 1) * (d - 2) // 2:
        return []
    n = 3 * d + g - 1
    if len(cfg.points) != n:
        raise ValueError(f"expected {n} points for degree {d} genus {g}")
    out = []
    for diag in _marked_diagrams(d, g):
        curve = diagram_curve(diag, cfg)
        if curve is not None:
            out.append((diag, curve))
    return out


def count_severi(d, g, cfg=None):
    """Multiplicity-weighted count of genus-g degree-d curves through
    3d + g - 1 stretched points (the Severi degree)."""
    if d > 5:
        raise ScaleRefusal("count_severi is certified for d <= 5 only")
    if d < 1:
        raise ValueError("degree must be positive")
    if g < 0 or g > (d - 1) * (d - 2) // 2:
        return 0
    if cfg is None:
        cfg = make_stretched(3 * d + g - 1, d)
    total = 0
    for _diag, curve in enumerate_curves(d, g, cfg):
        total += curve.multiplicity()
    return total


def top_floor_check(diag: FloorDiagram):
    """Exactly one elevator at the top floor, of weight one, and every
    floor has an adjacent downward elevator."""
    top = [e for e in diag.elevators if e.top == diag.d or e.bottom == diag.d]
    if len(top) != 1 or top[0].weight != 1 or top[0].top != diag.d:
        return False
    for fl in range(1, diag.d + 1):
        if not any(e.top == fl for e in diag.elevators):
            return False
    return True


# ---------------------------------------------------------------------------
# decomposition of a parametrized curve into floors and elevators
# ---------------------------------------------------------------------------


class NotFloorDecomposed(ValueError):
    def __init__(self, slope):
        super().__init__(f"edge slope {slope} is neither (+-1, *) nor (0, *)")
        self.slope = slope


@dataclass(frozen=True)
class Decomposition:
    """Floors and elevators of a floor decomposed curve.

    floors: tuple of vertex tuples, ordered bottom to top by height;
    elevators: tuple of (vertex chain, weight, top floor index or UP,
    bottom floor index or DOWN, marks); diagram: the marked FloorDiagram
    when the marking is one point per object, else None with problems.
    """

    floors: tuple
    elevators: tuple
    diagram: FloorDiagram | None
    problems: tuple


def decompose(curve: ParametrizedCurve):
    """Split a curve into floors and elevators.

    Raises NotFloorDecomposed when some edge or leg has a slope other
    than (+-1, *) or (0, *).
    """
    t = curve.ctype
    for e in t.edges:
        if abs(e.slope[0]) not in (0, 1):
            raise NotFloorDecomposed(e.slope)
    for leg in t.legs:
        if abs(leg.slope[0]) not in (0, 1):
            raise NotFloorDecomposed(leg.slope)

    vertical_edges = [i for i, e in enumerate(t.edges) if e.slope[0] == 0 and e.slope[1] != 0]
    vertical_legs = [j for j, leg in enumerate(t.legs) if leg.slope[0] == 0 and leg.slope[1] != 0]

    # components after removing elevator interiors
    n = t.n_vertices()
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, e in enumerate(t.edges):
        if i not in vertical_edges and not e.is_loop():
            a, b = find(e.u), find(e.v)
            if a != b:
                parent[a] = b
    comps = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)

    # a floor is a component carrying some non-contracted horizontal piece
    def is_floor(vs):
        vset = set(vs)
        for i, e in enumerate(t.edges):
            if i not in vertical_edges and e.u in vset and e.slope != (0, 0):
                return True
        for j, leg in enumerate(t.legs):
            if j not in vertical_legs and leg.vertex in vset and leg.slope != (0, 0):
                return True
        return False

    floor_comps = [tuple(sorted(vs)) for vs in comps.values() if is_floor(vs)]
    floor_comps.sort(key=lambda vs: (min(curve.positions[v][1] for v in vs), vs))
    floor_of = {}
    for idx, vs in enumerate(floor_comps, start=1):
        for v in vs:
            floor_of[v] = idx

    # elevators: maximal vertical chains through non-floor junction vertices
    used = set()
    elevators = []
    adj = {}
    for i in vertical_edges:
        e = t.edges[i]
        adj.setdefault(e.u, []).append(i)
        adj.setdefault(e.v, []).append(i)

    for i in vertical_edges:
        if i in used:
            continue
        chain = [i]
        used.add(i)

        def extend(v):
            # walk through 2-valent vertical junctions outside floors
            while v not in floor_of:
                nxt = [k for k in adj.get(v, []) if k not in used]
                if len(nxt) != 1:
                    break
                k = nxt[0]
                used.add(k)
                chain.append(k)
                e = t.edges[k]
                v = e.v if e.u == v else e.u
            return v

        end_a = extend(t.edges[i].u)
        end_b = extend(t.edges[i].v)
        if curve.positions[end_a][1] >= curve.positions[end_b][1]:
            top_v, bot_v = end_a, end_b
        else:
            top_v, bot_v = end_b, end_a
        w = abs(t.edges[i].slope[1])
        elevators.append((tuple(chain), w, top_v, bot_v))

    problems = []
    for chain, w, top_v, bot_v in elevators:
        for k in chain:
            if abs(t.edges[k].slope[1]) != w:
                problems.append(f"elevator chain {chain} mixes weights")

    # vertical legs are elevators to infinity
    leg_elevators = []
    for j in vertical_legs:
        leg = t.legs[j]
        w = abs(leg.slope[1])
        goes_down = leg.slope[1] < 0
        leg_elevators.append((j, w, leg.vertex, goes_down))

    # marks: contracted legs, one per floor / elevator
    marks_of_floor = {i: [] for i in range(1, len(floor_comps) + 1)}
    marks_other = {}
    for j in t.contracted_legs():
        v = t.legs[j].vertex
        if v in floor_of:
            marks_of_floor[floor_of[v]].append(j + 1)
        else:
            marks_other.setdefault(v, []).append(j + 1)

    diagram = None
    if len(floor_comps) > 0:
        elevator_records = []
        ok = True
        for chain, w, top_v, bot_v in elevators:
            chain_vertices = set()
            for k in chain:
                chain_vertices.add(t.edges[k].u)
                chain_vertices.add(t.edges[k].v)
            inner = [v for v in chain_vertices if v not in floor_of]
            marks = sorted(m for v in inner for m in marks_other.get(v, []))
            top_fl = floor_of.get(top_v, UP)
            bot_fl = floor_of.get(bot_v, DOWN)
            if len(marks) != 1:
                problems.append(f"elevator with marks {marks}")
                ok = False
                marks = [0]
            elevator_records.append(Elevator(top_fl, bot_fl, w, marks[0]))
        for j, w, v, goes_down in leg_elevators:
            fl = floor_of.get(v, None)
            if fl is None:
                # the leg hangs off an elevator chain: it extends that chain
                continue
            # an unmarked vertical leg attached to a floor is its own
            # elevator only if it carries a mark vertex; mark vertices on
            # legs appear as chain vertices, handled above.  A bare leg at
            # a floor is an elevator without a mark.
            elevator_records.append(Elevator(fl, DOWN if goes_down else UP, w, 0))
            problems.append("unmarked vertical leg elevator")
            ok = False
        floor_marks = []
        for i in range(1, len(floor_comps) + 1):
            ms = sorted(marks_of_floor[i])
            if len(ms) != 1:
                problems.append(f"floor {i} with marks {ms}")
                ok = False
                ms = [0]
            floor_marks.append(ms[0])
        if ok:
            bounded = sum(1 for e in elevator_records if e.top > 0 and e.bottom > 0)
            diagram = FloorDiagram(
                len(floor_comps),
                bounded - (len(floor_comps) - 1),
                tuple(floor_marks),
                tuple(sorted(elevator_records, key=lambda e: e.mark)),
            )

    return Decomposition(
        floors=tuple(floor_comps),
        elevators=tuple(elevators),
        diagram=diagram,
        problems=tuple(problems),
    )

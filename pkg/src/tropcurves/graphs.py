"""Weighted metric graphs with ordered legs and tropical plane curve types.

Three layers of data:

* `TropicalGraph` -- a connected weighted graph with ordered legs and
  positive rational edge lengths (legs are infinitely long).
* `CombinatorialType` -- the same graph without lengths, plus an integer
  slope 2-vector for every oriented edge and leg.  A non-loop edge stores
  the slope of one chosen orientation (tail -> head); the reverse germ is
  its negation.  Loops carry two germ slopes that are negatives of each
  other, and since geometric consistency forces them to vanish, a loop
  with a nonzero slope is rejected at construction.
* `ParametrizedCurve` -- a combinatorial type with lengths and rational
  vertex positions in the plane, consistent edge by edge.

All values are immutable after construction and safe to share between
workers; every operation below is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Vec = tuple[int, int]

ZERO2 = (0, 0)


def vadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def vneg(a):
    return (-a[0], -a[1])


def vsub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


@dataclass(frozen=True)
class Edge:
    """An edge oriented u -> v carrying the slope of that orientation."""

    u: int
    v: int
    slope: Vec = ZERO2

    def is_loop(self):
        return self.u == self.v

    def germ_at(self, vertex, end=None):
        """Slope pointing away from `vertex`; loops need an explicit end (0 or 1)."""
        if self.is_loop():
            if end is None:
                raise ValueError("loop germ requires an end")
            return self.slope if end == 0 else vneg(self.slope)
        if vertex == self.u:
            return self.slope
        if vertex == self.v:
            return vneg(self.slope)
        raise ValueError("vertex not incident to edge")


@dataclass(frozen=True)
class Leg:
    """A leg attached to `vertex`, oriented away from it."""

    vertex: int
    slope: Vec = ZERO2

    def is_contracted(self):
        return self.slope == ZERO2


def _check_connected(n_vertices, adjacency_pairs):
    if n_vertices == 0:
        raise ValueError("graph needs at least one vertex")
    seen = {0}
    frontier = [0]
    adj = {i: [] for i in range(n_vertices)}
    for u, v in adjacency_pairs:
        adj[u].append(v)
        adj[v].append(u)
    while frontier:
        x = frontier.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    if len(seen) != n_vertices:
        raise ValueError("graph is disconnected")


@dataclass(frozen=True)
class TropicalGraph:
    """A connected weighted metric graph with ordered legs."""

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    lengths: tuple[Fraction, ...]
    legs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "lengths", tuple(Fraction(x) for x in self.lengths))
        object.__setattr__(self, "legs", tuple(int(v) for v in self.legs))
        n = len(self.weights)
        if len(self.lengths) != len(self.edges):
            raise ValueError("one length per edge required")
        if any(w < 0 for w in self.weights):
            raise ValueError("vertex weights must be nonnegative")
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge endpoint out of range")
        for v in self.legs:
            if not (0 <= v < n):
                raise ValueError("leg vertex out of range")
        if any(x <= 0 for x in self.lengths):
            raise ValueError("edge lengths must be strictly positive")
        _check_connected(n, self.edges)

    def n_vertices(self):
        return len(self.weights)

    def valency(self, v):
        val = sum(1 for leg in self.legs if leg == v)
        for u, w in self.edges:
            if u == v:
                val += 1
            if w == v:
                val += 1
        return val


@dataclass(frozen=True)
class CombinatorialType:
    """A weighted graph with ordered legs and integer slopes on germs."""

    weights: tuple[int, ...]
    edges: tuple[Edge, ...]
    legs: tuple[Leg, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "legs", tuple(self.legs))
        n = len(self.weights)
        if any(w < 0 for w in self.weights):
            raise ValueError("vertex weights must be nonnegative")
        for e in self.edges:
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise ValueError("edge endpoint out of range")
            if e.is_loop() and e.slope != ZERO2:
                raise ValueError("a loop with nonzero slope is not realizable")
        for leg in self.legs:
            if not (0 <= leg.vertex < n):
                raise ValueError("leg vertex out of range")
        _check_connected(n, [(e.u, e.v) for e in self.edges])

    # -- structure ------------------------------------------------------
    def n_vertices(self):
        return len(self.weights)

    def valency(self, v):
        val = sum(1 for leg in self.legs if leg.vertex == v)
        for e in self.edges:
            if e.u == v:
                val += 1
            if e.v == v:
                val += 1
        return val

    def star(self, v):
        """Germs at v as (slope, descriptor) pairs; loops contribute both germs."""
        germs = []
        for i, e in enumerate(self.edges):
            if e.is_loop() and e.u == v:
                germs.append((e.slope, ("edge", i, 0)))
                germs.append((vneg(e.slope), ("edge", i, 1)))
            elif e.u == v:
                germs.append((e.slope, ("edge", i, 0)))
            elif e.v == v:
                germs.append((vneg(e.slope), ("edge", i, 1)))
        for j, leg in enumerate(self.legs):
            if leg.vertex == v:
                germs.append((leg.slope, ("leg", j)))
        return germs

    def underlying_graph(self, lengths=None):
        """Forget slopes; default lengths are all 1."""
        if lengths is None:
            lengths = (Fraction(1),) * len(self.edges)
        return TropicalGraph(
            weights=self.weights,
            edges=tuple((e.u, e.v) for e in self.edges),
            lengths=tuple(lengths),
            legs=tuple(leg.vertex for leg in self.legs),
        )

    # -- degree data -----------------------------------------------------
    def contracted_legs(self):
        return tuple(i for i, leg in enumerate(self.legs) if leg.is_contracted())

    def n_marks(self):
        return len(self.contracted_legs())

    def degree(self):
        """Slopes of the non-contracted legs, in leg order."""
        return tuple(leg.slope for leg in self.legs if not leg.is_contracted())

    def extended_degree(self):
        return tuple(leg.slope for leg in self.legs)

    def first_betti(self):
        return len(self.edges) - len(self.weights) + 1

    def is_weightless(self):
        return all(w == 0 for w in self.weights)

    def is_immersed(self):
        """No contracted edge, and no two germs at a vertex pointing the
        same way (the map is locally injective away from contracted legs)."""
        for e in self.edges:
            if e.slope == ZERO2:
                return False
        for v in range(self.n_vertices()):
            germs = [s for s, _ in self.star(v) if s != ZERO2]
            for i in range(len(germs)):
                for j in range(i + 1, len(germs)):
                    a, b = germs[i], germs[j]
                    if det2(a, b) == 0 and a[0] * b[0] + a[1] * b[1] > 0:
                        return False
        return True


# ---------------------------------------------------------------------------
# operations on graphs and types
# ---------------------------------------------------------------------------


def genus(g):
    """1 - chi + sum of vertex weights, for a connected graph."""
    if isinstance(g, CombinatorialType):
        nv, ne = g.n_vertices(), len(g.edges)
    else:
        nv, ne = g.n_vertices(), len(g.edges)
    # chi = b0 - b1 = |V| - |E| for a connected graph
    return 1 - (nv - ne) + sum(g.weights)


def is_stable(g):
    """Weight-0 vertices need valency >= 3; weight-1 vertices need >= 1."""
    for v in range(g.n_vertices()):
        w = g.weights[v]
        val = g.valency(v)
        if w == 0 and val < 3:
            return False
        if w == 1 and val < 1:
            return False
    return True


def check_balancing(t: CombinatorialType):
    """None when every vertex star sums to zero, else the first bad vertex."""
    for v in range(t.n_vertices()):
        total = (0, 0)
        for s, _ in t.star(v):
            total = vadd(total, s)
        if total != ZERO2:
            return v
    return None


def is_balanced(t: CombinatorialType):
    return check_balancing(t) is None


def overvalency(g):
    return sum(max(0, g.valency(v)) - 3 for v in range(g.n_vertices()) if g.valency(v) > 3)


def _contract_core(t: CombinatorialType, edge_indices):
    """Weighted edge contraction; returns (type, vertex_map, edge_map, leg_map).

    edge_map sends an old surviving edge index to its new index (contracted
    edges are absent); vertex_map sends old vertices to merged vertices.
    """
    subset = sorted(set(edge_indices))
    for i in subset:
        if not (0 <= i < len(t.edges)):
            raise ValueError("edge index out of range")
    n = t.n_vertices()
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in subset:
        e = t.edges[i]
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            parent[ru] = rv
    reps = sorted({find(v) for v in range(n)})
    new_id = {r: k for k, r in enumerate(reps)}
    vertex_map = {v: new_id[find(v)] for v in range(n)}

    # weight of a merged vertex: sum of weights plus the genus of the
    # contracted subgraph landing there
    weights = [0] * len(reps)
    comp_vertices = {}
    for v in range(n):
        comp_vertices.setdefault(vertex_map[v], set()).add(v)
        weights[vertex_map[v]] += t.weights[v]
    comp_edges = {k: 0 for k in range(len(reps))}
    for i in subset:
        e = t.edges[i]
        comp_edges[vertex_map[e.u]] += 1
    for k in range(len(reps)):
        b1 = comp_edges.get(k, 0) - len(comp_vertices[k]) + 1
        weights[k] += b1

    edges = []
    edge_map = {}
    for i, e in enumerate(t.edges):
        if i in set(subset):
            continue
        edge_map[i] = len(edges)
        edges.append(Edge(vertex_map[e.u], vertex_map[e.v], e.slope))
    legs = tuple(Leg(vertex_map[leg.vertex], leg.slope) for leg in t.legs)
    leg_map = {j: j for j in range(len(t.legs))}
    new_t = CombinatorialType(tuple(weights), tuple(edges), legs)
    return new_t, vertex_map, edge_map, leg_map


def contract(t: CombinatorialType, edge_indices):
    """Contract a set of contracted (slope-zero) edges.

    Collapsing an edge of nonzero slope would change the parametrized
    geometry, so it is rejected; use `face_contract` for the face maps of
    moduli cones, where any edge length may degenerate to zero.
    """
    for i in set(edge_indices):
        if t.edges[i].slope != ZERO2:
            raise ValueError(f"edge {i} has nonzero slope {t.edges[i].slope}; only contracted edges may be collapsed")
    new_t, _, _, _ = _contract_core(t, edge_indices)
    return new_t


def face_contract(t: CombinatorialType, edge_indices, with_maps=False):
    """Weighted edge contraction of an arbitrary edge subset.

    This is the contraction appearing on the boundary of a moduli cone:
    the named edge lengths go to zero and their endpoints merge.  Genus,
    balancing and the extended degree are all preserved.
    """
    new_t, vmap, emap, lmap = _contract_core(t, edge_indices)
    if with_maps:
        return new_t, vmap, emap, lmap
    return new_t


# ---------------------------------------------------------------------------
# parametrized curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParametrizedCurve:
    """A combinatorial type with exact lengths and vertex positions.

    For every non-loop edge u -> v the positions satisfy
    ``position(v) - position(u) == length * slope``, so the whole map to
    the plane is determined by the stored data.
    """

    ctype: CombinatorialType
    lengths: tuple[Fraction, ...]
    positions: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(Fraction(x) for x in self.lengths))
        object.__setattr__(
            self, "positions", tuple((Fraction(p[0]), Fraction(p[1])) for p in self.positions)
        )
        t = self.ctype
        if len(self.lengths) != len(t.edges):
            raise ValueError("one length per edge required")
        if len(self.positions) != t.n_vertices():
            raise ValueError("one position per vertex required")
        if any(x <= 0 for x in self.lengths):
            raise ValueError("edge lengths must be strictly positive")
        for e, ln in zip(t.edges, self.lengths):
            pu, pv = self.positions[e.u], self.positions[e.v]
            if e.is_loop():
                if e.slope != ZERO2:
                    raise ValueError("loop slope must vanish")
                continue
            if (pv[0] - pu[0], pv[1] - pu[1]) != (ln * e.slope[0], ln * e.slope[1]):
                raise ValueError(f"edge {e} violates geometric consistency")

    def evaluate(self):
        """Images of the contracted legs, in leg order."""
        return tuple(self.positions[self.ctype.legs[i].vertex] for i in self.ctype.contracted_legs())

    def leg_position(self, leg_index):
        return self.positions[self.ctype.legs[leg_index].vertex]

    def vertex_multiplicity(self, v):
        """|det| of two of the three non-contracted germ slopes at a
        3-valent-in-the-immersed-sense vertex; 1 when fewer than three
        germs survive dropping the contracted ones."""
        germs = [s for s, _ in self.ctype.star(v) if s != ZERO2]
        if len(germs) < 3:
            return 1
        if len(germs) > 3:
            raise ValueError("multiplicity undefined at vertices with more than three non-contracted germs")
        return abs(det2(germs[0], germs[1]))

    def multiplicity(self):
        m = 1
        for v in range(self.ctype.n_vertices()):
            m *= self.vertex_multiplicity(v)
        return m

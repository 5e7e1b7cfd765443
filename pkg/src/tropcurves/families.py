"""Families of parametrized tropical curves over a loop-free base curve.

A family over a base tropical curve is finite data: a combinatorial type
for every base edge and leg, affine length and position functions along
it, a parametrized curve over every base vertex, and weighted
contractions relating the edge types to the vertex curves.  Validation
checks the three compatibilities of the definition at the endpoints of
every base edge, which suffices for affine data, together with
balancing of the edge types.

Affine functions on a base edge are stored as value-at-tail plus slope;
fibers at irrational parameters are defined by affine extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from tropcurves.graphs import (
    CombinatorialType,
    ParametrizedCurve,
    TropicalGraph,
    check_balancing,
)

F = Fraction


@dataclass(frozen=True)
class AffineFunction:
    """value(q) = value_at_tail + slope * dist(tail, q) along a base edge."""

    value: Fraction
    slope: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", F(self.value))
        object.__setattr__(self, "slope", F(self.slope))

    def at(self, dist):
        return self.value + self.slope * dist


@dataclass(frozen=True)
class BaseCurve:
    """A loop-free connected tropical curve serving as the family base."""

    graph: TropicalGraph

    def __post_init__(self):
        for u, v in self.graph.edges:
            if u == v:
                raise ValueError("the base curve must not have loops")


@dataclass(frozen=True)
class Contraction:
    """A weighted edge contraction G_e -> G_w given by its vertex map and
    the surviving-edge correspondence (None = contracted away)."""

    vertex_map: tuple[int, ...]
    edge_map: tuple  # per edge of G_e: target edge index in G_w or None


@dataclass(frozen=True)
class FamilyDatum:
    """The finite datum of a family over a base curve.

    * extended_degree: leg slopes common to every fiber;
    * edge_types[e]: combinatorial type over base edge or leg e;
    * lengths[e][gamma]: AffineFunction for each edge gamma of the type;
    * positions[e][u]: pair of AffineFunctions for each vertex u;
    * vertex_curves[w]: parametrized curve over base vertex w;
    * contractions[(w, e)]: contraction of the edge type onto the vertex
      curve, for each base edge or leg e with tail or head w.

    Base legs are indexed by ("leg", j) and edges by ("edge", i); an
    edge's two germs give two contraction entries, keyed by its vertices.
    """

    base: BaseCurve
    extended_degree: tuple
    edge_types: dict
    lengths: dict
    positions: dict
    vertex_curves: dict
    contractions: dict


@dataclass(frozen=True)
class FamilyVerdict:
    ok: bool
    violation: str | None = None
    detail: str | None = None


def _edge_refs(base: BaseCurve):
    refs = []
    for i, (u, v) in enumerate(base.graph.edges):
        refs.append((("edge", i), u, v, base.graph.lengths[i]))
    for j, v in enumerate(base.graph.legs):
        refs.append((("leg", j), v, None, None))
    return refs


def _fiber_at(fam: FamilyDatum, ref, dist):
    """The parametrized curve over an interior point of a base edge."""
    t = fam.edge_types[ref]
    lengths = tuple(fam.lengths[ref][i].at(dist) for i in range(len(t.edges)))
    positions = tuple(
        (fam.positions[ref][u][0].at(dist), fam.positions[ref][u][1].at(dist))
        for u in range(t.n_vertices())
    )
    return t, lengths, positions


def validate_family(fam: FamilyDatum):
    """Check the family compatibilities; returns the first violation.

    (1) interior fibers are parametrized curves of the stated type with
        the stated extended degree;
    (2) at a base vertex, the contracted image of every type edge has the
        length given by the edge's length function;
    (3) the vertex curve's positions match the position functions.
    """
    for ref, tail, head, blen in _edge_refs(fam.base):
        t = fam.edge_types.get(ref)
        if t is None:
            return FamilyVerdict(False, "missing-type", str(ref))
        if t.extended_degree() != tuple(fam.extended_degree):
            return FamilyVerdict(False, "degree-mismatch", str(ref))
        bad = check_balancing(t)
        if bad is not None:
            return FamilyVerdict(False, "unbalanced-fiber", f"{ref} vertex {bad}")
        # sample parameters: endpoints (and midpoint of legs) suffice for
        # affine data; interior positivity is convexity in between
        samples = [F(0), blen] if blen is not None else [F(0), F(1)]
        mid = sum(samples) / 2
        for dist in (mid,):
            _t, lengths, positions = _fiber_at(fam, ref, dist)
            if any(l <= 0 for l in lengths):
                return FamilyVerdict(False, "fiber-leaves-stratum", f"{ref} at {dist}")
            try:
                ParametrizedCurve(t, lengths, positions)
            except ValueError as exc:
                return FamilyVerdict(False, "fiber-not-a-curve", f"{ref} at {dist}: {exc}")
        for dist in samples:
            _t, lengths, positions = _fiber_at(fam, ref, dist)
            if any(l < 0 for l in lengths):
                return FamilyVerdict(False, "negative-length", f"{ref} at {dist}")
        ends = [(tail, F(0))]
        if head is not None:
            ends.append((head, blen))
        for w, dist in ends:
            curve = fam.vertex_curves.get(w)
            contraction = fam.contractions.get((w, ref))
            if curve is None or contraction is None:
                return FamilyVerdict(False, "missing-vertex-data", f"vertex {w}, {ref}")
            # (2): lengths match through the contraction
            for i in range(len(t.edges)):
                target = contraction.edge_map[i]
                want = fam.lengths[ref][i].at(dist)
                have = curve.lengths[target] if target is not None else F(0)
                if want != have:
                    return FamilyVerdict(
                        False, "length-compatibility", f"{ref} edge {i} at vertex {w}"
                    )
            # (3): positions match through the contraction
            for u in range(t.n_vertices()):
                img = contraction.vertex_map[u]
                want = (
                    fam.positions[ref][u][0].at(dist),
                    fam.positions[ref][u][1].at(dist),
                )
                if curve.positions[img] != want:
                    return FamilyVerdict(
                        False, "position-compatibility", f"{ref} vertex {u} at base vertex {w}"
                    )
            # leg order must be preserved by the contraction
            for j, leg in enumerate(t.legs):
                if curve.ctype.legs[j].slope != leg.slope:
                    return FamilyVerdict(False, "leg-order", f"{ref} leg {j}")
                if contraction.vertex_map[leg.vertex] != curve.ctype.legs[j].vertex:
                    return FamilyVerdict(False, "leg-attachment", f"{ref} leg {j}")
    return FamilyVerdict(True)


def induced_map_slopes(fam: FamilyDatum, ref):
    """Slope of the induced moduli map along a base edge or leg.

    Coordinates: the edge-length functions' slopes followed by the
    vertex-position functions' slopes of the fiber type over `ref`.
    """
    t = fam.edge_types[ref]
    out = []
    for i in range(len(t.edges)):
        out.append(fam.lengths[ref][i].slope)
    for u in range(t.n_vertices()):
        out.append(fam.positions[ref][u][0].slope)
        out.append(fam.positions[ref][u][1].slope)
    return tuple(out)


def constant_family(base: BaseCurve, curve: ParametrizedCurve):
    """The family with every fiber equal to `curve` and identity maps."""
    t = curve.ctype
    edge_types = {}
    lengths = {}
    positions = {}
    contractions = {}
    ident = Contraction(
        vertex_map=tuple(range(t.n_vertices())),
        edge_map=tuple(range(len(t.edges))),
    )
    for ref, tail, head, _blen in _edge_refs(base):
        edge_types[ref] = t
        lengths[ref] = {i: AffineFunction(curve.lengths[i], 0) for i in range(len(t.edges))}
        positions[ref] = {
            u: (AffineFunction(curve.positions[u][0], 0), AffineFunction(curve.positions[u][1], 0))
            for u in range(t.n_vertices())
        }
        contractions[(tail, ref)] = ident
        if head is not None:
            contractions[(head, ref)] = ident
    vertex_curves = {w: curve for w in range(base.graph.n_vertices())}
    return FamilyDatum(
        base=base,
        extended_degree=t.extended_degree(),
        edge_types=edge_types,
        lengths=lengths,
        positions=positions,
        vertex_curves=vertex_curves,
        contractions=contractions,
    )


def ray_family(terminal_type, base_lengths, ray, base_point_curve):
    """The family over a single leg moving along a terminal ray.

    The fiber at distance q has lengths base + q * ray; positions are
    constant.  Used to revalidate the walk's genus-drop witness as an
    honest family.
    """
    base = BaseCurve(TropicalGraph(weights=(0,), edges=(), lengths=(), legs=(0,)))
    t = terminal_type
    nv = t.n_vertices()
    ref = ("leg", 0)
    lengths = {
        ref: {
            i: AffineFunction(base_lengths[i], ray[2 * nv + i]) for i in range(len(t.edges))
        }
    }
    positions = {
        ref: {
            u: (
                AffineFunction(base_point_curve.positions[u][0], ray[2 * u]),
                AffineFunction(base_point_curve.positions[u][1], ray[2 * u + 1]),
            )
            for u in range(nv)
        }
    }
    ident = Contraction(tuple(range(nv)), tuple(range(len(t.edges))))
    return FamilyDatum(
        base=base,
        extended_degree=t.extended_degree(),
        edge_types={ref: t},
        lengths=lengths,
        positions=positions,
        vertex_curves={0: base_point_curve},
        contractions={(0, ref): ident},
    )

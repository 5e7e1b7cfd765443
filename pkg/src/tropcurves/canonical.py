"""Canonical labeling and automorphism orders for combinatorial types.

Vertices are renumbered by iterative refinement of a coloring (weight,
valency, incident leg indices and germ slopes), with individualization
and backtracking on ties.  The canonical encoding makes type equality a
tuple comparison, and the number of leaf labelings that achieve the
minimal encoding equals the number of vertex automorphisms.

`Aut` of a type also permutes indistinguishable parallel edges and flips
loops, so the order returned by `aut_order` is

    (#achieving vertex labelings) * prod(multiplicity! over parallel
    classes) * 2^(#loops).
"""

from __future__ import annotations

from math import factorial

from tropcurves.graphs import CombinatorialType, Edge, Leg, vneg


def _leg_tag(j, leg, labeled):
    if labeled == "all":
        return (j, leg.slope)
    if labeled == "contracted":
        # contracted legs are pinned to their point index; the rest are
        # interchangeable within a slope class
        return (j, leg.slope) if leg.is_contracted() else (-1, leg.slope)
    return (-1, leg.slope)


def _adjacency_data(t: CombinatorialType, labeled="all"):
    """Per-vertex germ descriptors: (slope-away, neighbor) plus leg tags."""
    n = t.n_vertices()
    incid = [[] for _ in range(n)]
    for e in t.edges:
        if e.is_loop():
            incid[e.u].append((e.slope, e.u))
            incid[e.u].append((vneg(e.slope), e.u))
        else:
            incid[e.u].append((e.slope, e.v))
            incid[e.v].append((vneg(e.slope), e.u))
    legtags = [[] for _ in range(n)]
    for j, leg in enumerate(t.legs):
        legtags[leg.vertex].append(_leg_tag(j, leg, labeled))
    return incid, legtags


def _refine(n, incid, legtags, colors):
    while True:
        sigs = []
        for v in range(n):
            nb = sorted((s, colors[w]) for s, w in incid[v])
            sigs.append((colors[v], tuple(nb), tuple(sorted(legtags[v]))))
        order = sorted(set(sigs))
        ranks = {s: i for i, s in enumerate(order)}
        new = [ranks[sigs[v]] for v in range(n)]
        if new == colors:
            return colors
        colors = new


def _encode(t: CombinatorialType, label, labeled="all"):
    weights = tuple(t.weights[v] for v in sorted(range(t.n_vertices()), key=lambda v: label[v]))
    edge_keys = []
    for e in t.edges:
        a, b = label[e.u], label[e.v]
        if a <= b:
            edge_keys.append((a, b, e.slope))
        else:
            edge_keys.append((b, a, vneg(e.slope)))
    legs = [(_leg_tag(j, leg, labeled), label[leg.vertex]) for j, leg in enumerate(t.legs)]
    if labeled != "all":
        legs = sorted(legs)
    return (weights, tuple(sorted(edge_keys)), tuple(legs))


def _labelings(t: CombinatorialType, labeled="all"):
    """All discrete colorings reachable by individualization-refinement."""
    n = t.n_vertices()
    incid, legtags = _adjacency_data(t, labeled)
    base = [(t.weights[v], len(incid[v]) + len(legtags[v])) for v in range(n)]
    order = sorted(set(base))
    ranks = {s: i for i, s in enumerate(order)}
    colors0 = [ranks[base[v]] for v in range(n)]
    out = []

    def rec(colors):
        colors = _refine(n, incid, legtags, colors)
        cells = {}
        for v in range(n):
            cells.setdefault(colors[v], []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            label = [0] * n
            for rank, v in enumerate(sorted(range(n), key=lambda v: colors[v])):
                label[v] = rank
            out.append(label)
            return
        for v in target:
            branched = [2 * c for c in colors]
            branched[v] -= 1
            rec(branched)

    rec(colors0)
    return out


def canonical_form(t: CombinatorialType, labeled="all"):
    """(minimal encoding, one relabeling achieving it, #achieving labelings)."""
    best = None
    best_label = None
    count = 0
    for label in _labelings(t, labeled):
        enc = _encode(t, label, labeled)
        if best is None or enc < best:
            best = enc
            best_label = label
            count = 1
        elif enc == best:
            count += 1
    return best, best_label, count


def canonical_key(t: CombinatorialType, labeled="all"):
    return canonical_form(t, labeled)[0]


def canonical_type(t: CombinatorialType):
    """The type relabeled into its canonical numbering."""
    _, label, _ = canonical_form(t)
    return relabel(t, label)


def relabel(t: CombinatorialType, label):
    n = t.n_vertices()
    inv = [0] * n
    for v in range(n):
        inv[label[v]] = v
    weights = tuple(t.weights[inv[k]] for k in range(n))
    edge_keys = []
    for e in t.edges:
        a, b = label[e.u], label[e.v]
        if a <= b:
            edge_keys.append((a, b, e.slope))
        else:
            edge_keys.append((b, a, vneg(e.slope)))
    edges = tuple(Edge(a, b, s) for a, b, s in sorted(edge_keys))
    legs = tuple(Leg(label[leg.vertex], leg.slope) for leg in t.legs)
    return CombinatorialType(weights, edges, legs)


def types_isomorphic(t1: CombinatorialType, t2: CombinatorialType):
    return canonical_key(t1) == canonical_key(t2)


def aut_order(t: CombinatorialType):
    """Order of the automorphism group respecting leg order, weights, slopes."""
    _, label, vertex_count = canonical_form(t)
    # parallel classes of edges in the canonical encoding
    classes = {}
    loops = 0
    for e in t.edges:
        a, b = label[e.u], label[e.v]
        key = (a, b, e.slope) if a <= b else (b, a, vneg(e.slope))
        classes[key] = classes.get(key, 0) + 1
        if e.is_loop():
            loops += 1
    order = vertex_count * (2 ** loops)
    for mult in classes.values():
        order *= factorial(mult)
    return order


def brute_force_aut_order(t: CombinatorialType):
    """Independent oracle: try all vertex bijections, then count edge matchings."""
    from itertools import permutations

    n = t.n_vertices()

    def edge_multiset(perm):
        out = {}
        for e in t.edges:
            u, v = perm[e.u], perm[e.v]
            a, b = min(u, v), max(u, v)
            key = (a, b, e.slope if a == u else vneg(e.slope))
            out[key] = out.get(key, 0) + 1
        return out

    base_edges = edge_multiset(list(range(n)))
    loops = sum(1 for e in t.edges if e.is_loop())
    count = 0
    for perm in permutations(range(n)):
        if any(t.weights[perm[v]] != t.weights[v] for v in range(n)):
            continue
        # each ordered leg maps to itself, pinning its vertex
        if any(perm[leg.vertex] != leg.vertex for leg in t.legs):
            continue
        if edge_multiset(perm) == base_edges:
            count += 1
    result = count * (2 ** loops)
    for mult in base_edges.values():
        result *= factorial(mult)
    return result

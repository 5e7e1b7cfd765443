"""Marking combinatorics on an arrangement of d general lines.

The nodes of the arrangement are the pairs {i, j} of lines.  A marking
is a subset of delta nodes; it is irreducible when removing the marked
nodes leaves the incidence graph of the lines connected.  The similarity
move swaps the two nodes q = L' cap L'' and r = L cap L'' whenever
p = L cap L' is unmarked; its transitive closure partitions the markings
into equivalence classes, and the irreducible markings form exactly one
class, which the breadth-first search below verifies at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from tropcurves.errors import ScaleRefusal


def _node(i, j):
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Arrangement:
    """d lines in general position; nodes are the unordered index pairs."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("need at least one line")

    def nodes(self):
        return tuple(combinations(range(1, self.d + 1), 2))

    def n_nodes(self):
        return self.d * (self.d - 1) // 2


@dataclass(frozen=True)
class MarkingSet:
    """A set of marked nodes of the arrangement."""

    arrangement: Arrangement
    nodes: frozenset

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(_node(*p) for p in self.nodes))
        all_nodes = set(self.arrangement.nodes())
        if not self.nodes <= all_nodes:
            raise ValueError("marking contains a pair that is not a node")

    def delta(self):
        return len(self.nodes)

    def key(self):
        return tuple(sorted(self.nodes))


def is_irreducible(m: MarkingSet):
    """Connectivity of the line graph with the marked nodes removed."""
    d = m.arrangement.d
    parent = list(range(d + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in m.arrangement.nodes():
        if (i, j) in m.nodes:
            continue
        a, b = find(i), find(j)
        if a != b:
            parent[a] = b
    return len({find(i) for i in range(1, d + 1)}) == 1


def similar_moves(m: MarkingSet):
    """All markings obtained by one similarity move, deduplicated.

    For every ordered triple (L, L', L'') with p = L cap L' unmarked, the
    transposition swapping q = L' cap L'' and r = L cap L'' is applied.
    """
    d = m.arrangement.d
    out = {}
    for L in range(1, d + 1):
        for Lp in range(1, d + 1):
            if Lp == L:
                continue
            p = _node(L, Lp)
            if p in m.nodes:
                continue
            for Ls in range(1, d + 1):
                if Ls in (L, Lp):
                    continue
                q = _node(Lp, Ls)
                r = _node(L, Ls)
                swapped = set(m.nodes)
                has_q = q in swapped
                has_r = r in swapped
                if has_q and not has_r:
                    swapped.discard(q)
                    swapped.add(r)
                elif has_r and not has_q:
                    swapped.discard(r)
                    swapped.add(q)
                result = MarkingSet(m.arrangement, frozenset(swapped))
                out[result.key()] = result
    return list(out.values())


def equivalence_classes(d, delta):
    """Partition of all delta-markings under the move closure.

    Breadth-first search with frontier deduplication by the sorted node
    list; desk scale keeps d <= 7.
    """
    if d > 7:
        raise ScaleRefusal("equivalence classes are certified for d <= 7 only")
    arr = Arrangement(d)
    all_markings = [
        MarkingSet(arr, frozenset(c)) for c in combinations(arr.nodes(), delta)
    ]
    unseen = {m.key(): m for m in all_markings}
    classes = []
    while unseen:
        key = sorted(unseen)[0]
        start = unseen.pop(key)
        component = [start]
        frontier = [start]
        while frontier:
            nxt = []
            for m in frontier:
                for m2 in similar_moves(m):
                    k2 = m2.key()
                    if k2 in unseen:
                        del unseen[k2]
                        component.append(m2)
                        nxt.append(m2)
            frontier = nxt
        classes.append(sorted(component, key=lambda m: m.key()))
    return classes


def branch_codim(m: MarkingSet, m2: MarkingSet):
    """Codimension of the branch intersection: |m2 minus m|."""
    if m.arrangement != m2.arrangement:
        raise ValueError("markings live on different arrangements")
    if m.delta() != m2.delta():
        raise ValueError("markings must have the same cardinality")
    return len(m2.nodes - m.nodes)


def empty_criterion(d, delta):
    """True when no irreducible delta-marking exists: delta > (d-1)(d-2)/2.

    Cross-checked constructively: otherwise a marking disjoint from the
    first line exists and is irreducible.
    """
    bound = (d - 1) * (d - 2) // 2
    empty = delta > bound
    if not empty:
        witness = marking_avoiding_line(d, delta, line=1)
        assert witness is not None and is_irreducible(witness)
    return empty


def marking_avoiding_line(d, delta, line=1):
    """A delta-marking disjoint from the given line, when one exists."""
    arr = Arrangement(d)
    pool = [p for p in arr.nodes() if line not in p]
    if delta > len(pool):
        return None
    return MarkingSet(arr, frozenset(pool[:delta]))


def reduce_to_avoiding_line(m: MarkingSet, line=1):
    """Similarity moves taking an irreducible marking off the given line.

    Returns the list of markings visited; each move strictly decreases
    the number of marked nodes on the line.
    """
    if not is_irreducible(m):
        raise ValueError("reduction strategy requires an irreducible marking")
    d = m.arrangement.d
    path = [m]
    current = m
    while True:
        on_line = [p for p in current.nodes if line in p]
        if not on_line:
            return path
        # C: lines whose node with `line` is marked; C': the rest
        C = {i for p in on_line for i in p if i != line}
        Cp = set(range(1, d + 1)) - C - {line}
        found = None
        for i in C:
            for j in Cp:
                r = _node(i, j)
                if r not in current.nodes:
                    found = (i, j, r)
                    break
            if found:
                break
        if not found:
            raise ValueError("no strictly decreasing move exists; marking is reducible")
        i, j, r = found
        q = _node(line, i)
        swapped = set(current.nodes)
        swapped.discard(q)
        swapped.add(r)
        current = MarkingSet(current.arrangement, frozenset(swapped))
        path.append(current)


def severi_dim(d, g):
    """3d + g - 1, with the decorated-variety identity asserted.

    The identity 3d + g - 1 = (d+2)(d+1)/2 - 1 - delta holds for
    delta = (d-1)(d-2)/2 - g.
    """
    if not (1 - d <= g <= (d - 1) * (d - 2) // 2):
        raise ValueError(f"genus {g} out of range for degree {d}")
    dim = 3 * d + g - 1
    delta = (d - 1) * (d - 2) // 2 - g
    decorated = (d + 2) * (d + 1) // 2 - 1 - delta
    assert dim == decorated
    return dim

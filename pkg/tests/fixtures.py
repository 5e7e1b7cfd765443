"""Hand-built curve types shared across the test suite.

The two cubics are written out floor by floor: a smooth genus-1 cubic
(two elevators of weight one between the bottom floors making the cycle)
and a genus-0 cubic with a weight-2 elevator.  Both are weightless,
3-valent, balanced, of degree three copies each of (1,1), (-1,0), (0,-1).
"""

from fractions import Fraction

from tropcurves.graphs import CombinatorialType, Edge, Leg, ParametrizedCurve

F = Fraction


def tropical_line(n_marks=0):
    legs = tuple(Leg(0) for _ in range(n_marks)) + (
        Leg(0, (1, 1)),
        Leg(0, (-1, 0)),
        Leg(0, (0, -1)),
    )
    return CombinatorialType(weights=(0,), edges=(), legs=legs)


def smooth_cubic_type():
    """Genus-1 weightless 3-valent cubic: floors F3/F2/F1, elevators
    F3->F2 of weight 1 and a doubled F2->F1 of weight 1 (the cycle)."""
    # vertices: 0 = T (top floor), 1..3 = P, Qb, Qc (middle floor, left to
    # right), 4..8 = bottom floor chain (legL, R1, legM, R2, legR)
    edges = (
        Edge(0, 1, (0, -1)),  # elevator F3 -> F2 at P
        Edge(1, 2, (1, -1)),  # middle floor P -> Qb
        Edge(2, 3, (1, 0)),  # middle floor Qb -> Qc
        Edge(2, 5, (0, -1)),  # elevator Qb -> R1
        Edge(3, 7, (0, -1)),  # elevator Qc -> R2
        Edge(4, 5, (1, 1)),  # bottom floor legL -> R1
        Edge(5, 6, (1, 0)),  # bottom floor R1 -> legM
        Edge(6, 7, (1, 1)),  # bottom floor legM -> R2
        Edge(7, 8, (1, 0)),  # bottom floor R2 -> legR
    )
    legs = (
        Leg(0, (-1, 0)),
        Leg(0, (1, 1)),
        Leg(1, (-1, 0)),
        Leg(3, (1, 1)),
        Leg(4, (-1, 0)),
        Leg(4, (0, -1)),
        Leg(6, (0, -1)),
        Leg(8, (0, -1)),
        Leg(8, (1, 1)),
    )
    return CombinatorialType(weights=(0,) * 9, edges=edges, legs=legs)


def nodal_cubic_type():
    """Genus-0 weightless 3-valent cubic with a weight-2 elevator."""
    # vertices: 0 = T; 1 = P (elevator arrival on F2), 2 = Q (weight-2
    # departure); bottom floor: 3 = legL, 4 = R (weight-2 arrival),
    # 5 = legM, 6 = legR
    edges = (
        Edge(0, 1, (0, -1)),  # F3 -> F2, weight 1
        Edge(1, 2, (1, -1)),  # middle floor P -> Q
        Edge(2, 4, (0, -2)),  # weight-2 elevator Q -> R
        Edge(3, 4, (1, 1)),  # bottom floor legL -> R
        Edge(4, 5, (1, -1)),  # bottom floor R -> legM
        Edge(5, 6, (1, 0)),  # bottom floor legM -> legR
    )
    legs = (
        Leg(0, (-1, 0)),
        Leg(0, (1, 1)),
        Leg(1, (-1, 0)),
        Leg(2, (1, 1)),
        Leg(3, (-1, 0)),
        Leg(3, (0, -1)),
        Leg(5, (0, -1)),
        Leg(6, (0, -1)),
        Leg(6, (1, 1)),
    )
    return CombinatorialType(weights=(0,) * 7, edges=edges, legs=legs)


def smooth_cubic_curve():
    """An explicit parametrized curve of the smooth cubic type."""
    t = smooth_cubic_type()
    positions = (
        (F(2), F(20)),  # T
        (F(2), F(10)),  # P
        (F(4), F(8)),  # Qb
        (F(6), F(8)),  # Qc
        (F(3), F(-1)),  # legL vertex
        (F(4), F(0)),  # R1
        (F(5), F(0)),  # legM vertex
        (F(6), F(1)),  # R2
        (F(7), F(1)),  # legR vertex
    )
    lengths = (F(10), F(2), F(2), F(8), F(7), F(1), F(1), F(1), F(1))
    return ParametrizedCurve(t, lengths=lengths, positions=positions)

"""Moduli cones, walls, and evaluation fibers.

Every combinatorial type of parametrized tropical curve spans a cone in
position-length space.  Nice strata are weightless, 3-valent and of the
expected dimension; simple walls have one 4-valent vertex and resolve
into exactly three nice strata.  Pinning marked points cuts the cone
down to an evaluation fiber, classified exactly.

Run:  python3 demos/demo_moduli.py
"""

from fractions import Fraction as F

from tropcurves.cones import classify, cone_of, expected_dimension, resolve_wall
from tropcurves.corpus import enumerate_cores
from tropcurves.evaluation import PointConfiguration, fiber
from tropcurves.graphs import CombinatorialType, Leg, face_contract


def tropical_line(n_marks=0):
    legs = tuple(Leg(0) for _ in range(n_marks)) + (
        Leg(0, (1, 1)),
        Leg(0, (-1, 0)),
        Leg(0, (0, -1)),
    )
    return CombinatorialType(weights=(0,), edges=(), legs=legs)


def main():
    line = tropical_line()
    cone = cone_of(line)
    print(f"tropical line: dimension {cone.dimension} (translations), {classify(line).kind}")

    wall = tropical_line(n_marks=1)
    print(f"line with its mark at the vertex: {classify(wall).kind}")
    for new_t, new_e in resolve_wall(wall):
        back = face_contract(new_t, [new_e])
        print(
            f"  resolution: new edge slope {new_t.edges[new_e].slope}, "
            f"contracts back to the wall: {back.n_vertices()} vertex"
        )

    print()
    print("conic types by cone dimension (51 weightless cores of degree 2):")
    by_dim = {}
    for t in enumerate_cores(2, 0):
        by_dim.setdefault(cone_of(t).dimension, []).append(t)
    for dim in sorted(by_dim):
        expected = [expected_dimension(t) for t in by_dim[dim]]
        regular = sum(1 for t, e in zip(by_dim[dim], expected) if cone_of(t).dimension == e)
        print(f"  dimension {dim}: {len(by_dim[dim])} types, {regular} regular")

    print()
    print("a fiber: the unique line through two points")
    from tropcurves.corpus import _attach_mark

    t = _attach_mark(_attach_mark(tropical_line(), ("leg", 0)), ("leg", 2))
    cfg = PointConfiguration(((F(3), F(5)), (F(-5), F(-1))))
    fb = fiber(t, cfg)
    print(f"  kind={fb.kind}, codimension={fb.codimension()}, strictly inside={fb.inside}")


if __name__ == "__main__":
    main()

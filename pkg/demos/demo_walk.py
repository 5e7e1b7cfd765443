"""The elevator-moving walk: a genus-drop witness, step by step.

A genus-g solution through n stretched points has one marked point
declared mobile.  Sliding it moves the curve along a one-dimensional
fiber until an edge collapses: a simple wall, where the mobile elevator
E sits at a 4-valent vertex.  Crossing walls by the (k, r) case analysis
descends lexicographically until the curve acquires a contracted edge of
unbounded length: the tropical shadow of a node forming.

Run:  python3 demos/demo_walk.py
"""

from tropcurves.walk import run_walk


def describe(d, g, seed=0):
    trace = run_walk(d, g, seed=seed)
    print(f"walk for degree {d}, genus {g} (start #{seed})")
    print(f"  invariant descent: {' > '.join(str(kr) for kr in trace.invariants)}")
    for ev in trace.events:
        if ev[0] == "wall":
            print(f"  wall: {ev[1]}")
        elif ev[0] == "cross":
            print(f"    crossed ({ev[1]})")
        elif ev[0] == "terminal":
            print(f"  terminal: contracted edge #{ev[1]} grows without bound")
    t = trace.terminal.stratum
    print(f"  terminal stratum: {t.n_vertices()} vertices, {len(t.edges)} edges, "
          f"free edge slope {t.edges[trace.terminal.free_edge].slope}")
    print()


def main():
    describe(2, 0)
    describe(3, 1)
    # the ninth rational cubic meets a weight-2 elevator and must take the
    # three-wall descent to a lower floor
    describe(3, 0, seed=8)


if __name__ == "__main__":
    main()

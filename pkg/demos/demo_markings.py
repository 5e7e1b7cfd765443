"""Marking calculus on an arrangement of d lines.

A degree-d curve degenerating to d general lines remembers its genus
through a set of delta marked nodes.  The similarity move swaps two
nodes on a common line when a third node is unmarked; its closure has a
single class of irreducible markings, which is the combinatorial heart
of the irreducibility of the corresponding curve families.

Run:  python3 demos/demo_markings.py
"""

from tropcurves.arrangements import (
    Arrangement,
    MarkingSet,
    empty_criterion,
    equivalence_classes,
    is_irreducible,
    reduce_to_avoiding_line,
)


def main():
    for d in range(3, 7):
        max_delta = (d - 1) * (d - 2) // 2
        print(f"{d} lines, {d * (d - 1) // 2} nodes; irreducible markings need delta <= {max_delta}")
        for delta in range(0, max_delta + 1):
            classes = equivalence_classes(d, delta)
            irr = [c for c in classes if is_irreducible(c[0])]
            sizes = sorted(len(c) for c in classes)
            print(
                f"  delta={delta}: {len(classes)} classes (sizes {sizes}), "
                f"{len(irr)} of them irreducible"
            )
        print(f"  delta={max_delta + 1}: empty? {empty_criterion(d, max_delta + 1)}")
        print()

    print("walking a marking off the first line, one legal swap at a time:")
    m = MarkingSet(Arrangement(5), frozenset({(1, 2), (1, 3), (2, 3), (4, 5)}))
    for step in reduce_to_avoiding_line(m, line=1):
        on_line = sorted(p for p in step.nodes if 1 in p)
        print(f"  {sorted(step.nodes)}   (touching line 1: {on_line})")


if __name__ == "__main__":
    main()

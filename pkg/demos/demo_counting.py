"""Counting plane tropical curves through stretched points.

Every degree-d genus-g curve through 3d + g - 1 vertically stretched
points splits into d horizontal floors joined by vertical elevators.
Enumerating the marked floor diagrams and weighting each curve by its
vertex-determinant product gives the Severi degree; the same numbers
fall out of a completely independent Caporaso-Harris style recursion.

Run:  python3 demos/demo_counting.py
"""

from tropcurves.floors import count_severi, enumerate_curves, make_stretched
from tropcurves.recursion import irreducible_severi_degree, severi_degree


def main():
    print("Severi degrees, two ways")
    print("=" * 54)
    print(f"{'(d, g)':>8} {'floor diagrams':>16} {'recursion':>12}")
    for d in range(1, 5):
        for g in range(0, (d - 1) * (d - 2) // 2 + 1):
            tropical = count_severi(d, g)
            classical = irreducible_severi_degree(d, g)
            marker = "" if tropical == classical else "  <-- MISMATCH"
            print(f"({d}, {g})".rjust(8) + f"{tropical:>16}{classical:>12}{marker}")

    print()
    print("The twelve rational cubics through eight points, one by one:")
    cfg = make_stretched(8, 3)
    for diag, curve in enumerate_curves(3, 0, cfg):
        floors = diag.d
        elevators = len(diag.elevators)
        print(
            f"  multiplicity {curve.multiplicity()}: {floors} floors, "
            f"{elevators} elevators, weights {sorted(e.weight for e in diag.elevators)}"
        )
    print()
    print("Counts that include reducible curves, for comparison:")
    for d, g in [(3, -1), (4, 0)]:
        print(f"  degree {d}, formal genus {g}: {severi_degree(d, g)}")


if __name__ == "__main__":
    main()

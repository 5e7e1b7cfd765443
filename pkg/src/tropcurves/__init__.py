"""Exact-arithmetic machinery for tropical plane curves.

Everything is computed over the rationals: graph invariants, moduli cones
and their dimensions, evaluation fibers, floor-diagram enumeration with
Severi-degree counting, the elevator-moving wall-crossing walk, and the
marking calculus on line arrangements.  No floating point is stored
anywhere; identical inputs produce identical outputs.
"""

__version__ = "0.1.0"

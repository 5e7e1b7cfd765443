"""Exact rational linear algebra and a small simplex solver.

All computations use `fractions.Fraction`; there is no numerical rank or
floating-point pivoting anywhere.  The simplex solver uses Bland's rule,
so it terminates on every input and its answers are exact certificates
(feasible point, unbounded ray, or infeasibility).
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def mat_rank(rows):
    """Rank of a matrix given as an iterable of coefficient rows."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    col = 0
    while rank < len(m) and col < ncols:
        piv = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / pv
                row_r, row_p = m[r], m[rank]
                for c in range(col, ncols):
                    row_r[c] -= f * row_p[c]
        rank += 1
        col += 1
    return rank


def solve_affine(rows, rhs):
    """Solve ``A x = b`` exactly.

    Returns ``(particular, basis)`` where ``basis`` spans the kernel of A,
    or ``None`` when the system is inconsistent.
    """
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    nc = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(nc):
        piv = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        m[rank] = [x / pv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(m)):
        if m[r][nc] != 0:
            return None
    particular = [ZERO] * nc
    for i, col in enumerate(pivots):
        particular[col] = m[i][nc]
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [ZERO] * nc
        vec[fcol] = ONE
        for i, col in enumerate(pivots):
            vec[col] = -m[i][fcol]
        basis.append(vec)
    return particular, basis


class LPResult:
    """Outcome of an exact LP solve."""

    __slots__ = ("status", "value", "point", "ray")

    def __init__(self, status, value=None, point=None, ray=None):
        self.status = status  # "optimal" | "infeasible" | "unbounded"
        self.value = value
        self.point = point
        self.ray = ray

    def __repr__(self):
        return f"LPResult({self.status}, value={self.value})"


def _simplex_standard(c, A, b):
    """min c.x  s.t.  A x = b, x >= 0, solved by two-phase tableau simplex.

    Bland's rule throughout.  Returns an LPResult; rays certify
    unboundedness in the original coordinates.
    """
    m = len(A)
    n = len(c)
    # Normalize rhs to be nonnegative.
    A = [list(map(Fraction, row)) for row in A]
    b = [Fraction(x) for x in b]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]

    # Tableau columns: n structural + m artificial, then rhs.
    width = n + m
    tab = [A[i] + [ONE if j == i else ZERO for j in range(m)] + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]

    def pivot(row, col):
        pv = tab[row][col]
        tab[row] = [x / pv for x in tab[row]]
        for r in range(m):
            if r != row and tab[r][col] != 0:
                f = tab[r][col]
                tr, tp = tab[r], tab[row]
                tab[r] = [a - f * p for a, p in zip(tr, tp)]
        basis[row] = col

    def run_phase(cost, allowed):
        # cost: list of objective coefficients per column (length width).
        while True:
            # reduced costs z_j - c_j via current basis
            red = list(cost)
            for r in range(m):
                cb = cost[basis[r]]
                if cb != 0:
                    row = tab[r]
                    for j in range(width):
                        if row[j] != 0:
                            red[j] -= cb * row[j]
            enter = None
            for j in range(width):
                if j in allowed and red[j] < 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            leave = None
            best = None
            for r in range(m):
                a = tab[r][enter]
                if a > 0:
                    ratio = tab[r][width] / a
                    if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                        best = ratio
                        leave = r
            if leave is None:
                return ("unbounded", enter)
            pivot(leave, enter)

    # Phase 1
    cost1 = [ZERO] * n + [ONE] * m
    allowed = set(range(width))
    out = run_phase(cost1, allowed)
    assert out == "optimal"  # phase-1 objective is bounded below by 0
    val1 = sum(tab[r][width] * cost1[basis[r]] for r in range(m))
    if val1 != 0:
        return LPResult("infeasible")
    # Drive artificials out of the basis where possible.
    for r in range(m):
        if basis[r] >= n:
            done = False
            for j in range(n):
                if tab[r][j] != 0:
                    pivot(r, j)
                    done = True
                    break
            if not done:
                # redundant row; leave the artificial basic at value 0
                pass
    # Phase 2: artificial columns barred.
    cost2 = [Fraction(x) for x in c] + [ZERO] * m
    allowed = set(range(n))
    out = run_phase(cost2, allowed)
    point = [ZERO] * n
    for r in range(m):
        if basis[r] < n:
            point[basis[r]] = tab[r][width]
    if out == "optimal":
        value = sum(Fraction(c[j]) * point[j] for j in range(n))
        return LPResult("optimal", value=value, point=point)
    _, enter = out
    ray = [ZERO] * n
    ray[enter] = ONE
    for r in range(m):
        if basis[r] < n:
            ray[basis[r]] = -tab[r][enter]
    return LPResult("unbounded", point=point, ray=ray)


def feasible_nonneg(rows, rhs, width):
    """Fast feasibility of {A x = b, x >= 0}: bare phase-1 simplex.

    rows: list of {col: coeff} dicts; returns True/False.  This is the
    hot path of the incidence scans; it avoids the Polyhedron wrapper.
    """
    m = len(rows)
    if m == 0:
        return True
    A = []
    b = []
    for row, r in zip(rows, rhs):
        dense = [ZERO] * width
        neg = r < 0
        for j, a in row.items():
            dense[j] = Fraction(-a) if neg else Fraction(a)
        A.append(dense)
        b.append(-Fraction(r) if neg else Fraction(r))
    total = width + m
    tab = [A[i] + [ONE if j == i else ZERO for j in range(m)] + [b[i]] for i in range(m)]
    basis = [width + i for i in range(m)]
    # phase-1 objective: sum of artificials; reduced costs updated on the fly
    while True:
        red = [ZERO] * total
        for j in range(width):
            s = ZERO
            for r in range(m):
                if basis[r] >= width and tab[r][j] != 0:
                    s += tab[r][j]
            red[j] = -s
        enter = None
        for j in range(width):
            if red[j] < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for r in range(m):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][total] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave is None:
            break
        pv = tab[leave][enter]
        tab[leave] = [x / pv for x in tab[leave]]
        for r in range(m):
            if r != leave and tab[r][enter] != 0:
                f = tab[r][enter]
                rowr = tab[r]
                rowp = tab[leave]
                tab[r] = [x - f * y for x, y in zip(rowr, rowp)]
        basis[leave] = enter
    value = sum(tab[r][total] for r in range(m) if basis[r] >= width)
    return value == 0


class Polyhedron:
    """A polyhedron ``{x : A x = b, x_i >= 0 for i in nonneg}``.

    Variables not listed in ``nonneg`` are free.  Internally free
    variables are split into differences of nonnegative ones, so every
    query reduces to standard-form simplex.
    """

    def __init__(self, n_vars, nonneg):
        self.n = n_vars
        self.nonneg = sorted(set(nonneg))
        self.free = [i for i in range(n_vars) if i not in set(self.nonneg)]
        self.rows = []
        self.rhs = []

    def add_eq(self, coeffs, rhs):
        """Add a row given as {var_index: coeff}."""
        row = [ZERO] * self.n
        for j, a in coeffs.items():
            row[j] += Fraction(a)
        self.rows.append(row)
        self.rhs.append(Fraction(rhs))

    # --- internal standard-form encoding -------------------------------
    def _encode(self):
        # columns: nonneg vars, then (p, q) pairs per free var
        cols = {}
        k = 0
        for i in self.nonneg:
            cols[i] = k
            k += 1
        fcols = {}
        for i in self.free:
            fcols[i] = (k, k + 1)
            k += 2
        width = k
        A = []
        for row in self.rows:
            r = [ZERO] * width
            for i in self.nonneg:
                if row[i] != 0:
                    r[cols[i]] = row[i]
            for i in self.free:
                if row[i] != 0:
                    p, q = fcols[i]
                    r[p] = row[i]
                    r[q] = -row[i]
            A.append(r)
        return A, list(self.rhs), cols, fcols, width

    def _decode(self, xs, cols, fcols):
        out = [ZERO] * self.n
        for i in self.nonneg:
            out[i] = xs[cols[i]]
        for i in self.free:
            p, q = fcols[i]
            out[i] = xs[p] - xs[q]
        return out

    # --- queries --------------------------------------------------------
    def feasible_point(self):
        A, b, cols, fcols, width = self._encode()
        res = _simplex_standard([ZERO] * width, A, b)
        if res.status == "infeasible":
            return None
        return self._decode(res.point, cols, fcols)

    def optimize(self, objective, sense="min"):
        """Optimize a linear functional given as {var: coeff}.

        Returns an LPResult with point/ray in original coordinates.
        """
        A, b, cols, fcols, width = self._encode()
        c = [ZERO] * width
        sign = ONE if sense == "min" else -ONE
        for i, a in objective.items():
            a = sign * Fraction(a)
            if i in set(self.nonneg):
                c[cols[i]] += a
            else:
                p, q = fcols[i]
                c[p] += a
                c[q] -= a
        res = _simplex_standard(c, A, b)
        if res.status == "infeasible":
            return res
        point = self._decode(res.point, cols, fcols)
        if res.status == "unbounded":
            ray = self._decode(res.ray, cols, fcols)
            return LPResult("unbounded", point=point, ray=ray)
        value = sum(Fraction(a) * point[i] for i, a in objective.items())
        return LPResult("optimal", value=value, point=point)

    def strict_point(self):
        """A point with all nonneg variables strictly positive, or None.

        One slack LP: maximize t subject to x_i - t - s_i = 0, t <= 1.
        """
        if not self.nonneg:
            return self.feasible_point()
        m = len(self.nonneg)
        Q = Polyhedron(self.n + 1 + m + 1, nonneg=list(self.nonneg) + list(range(self.n, self.n + 1 + m + 1)))
        for row, rhs in zip(self.rows, self.rhs):
            Q.rows.append(list(row) + [ZERO] * (1 + m + 1))
            Q.rhs.append(rhs)
        t_var = self.n
        for k, i in enumerate(self.nonneg):
            Q.add_eq({i: 1, t_var: -1, self.n + 1 + k: -1}, 0)
        # t + cap = 1 keeps the LP bounded
        Q.add_eq({t_var: 1, self.n + 1 + m: 1}, 1)
        res = Q.optimize({t_var: 1}, sense="max")
        if res.status != "optimal" or res.value <= 0:
            return None
        return res.point[: self.n]

    def implicit_zero_vars(self):
        """Nonneg variables that vanish identically on the polyhedron."""
        if self.strict_point() is not None:
            return []
        out = []
        for i in self.nonneg:
            res = self.optimize({i: 1}, sense="max")
            if res.status == "optimal" and res.value == 0:
                out.append(i)
        return out

    def dim(self):
        """Dimension of the polyhedron (-1 when empty)."""
        if self.strict_point() is not None:
            return self.n - mat_rank(self.rows)
        if self.feasible_point() is None:
            return -1
        zero = self.implicit_zero_vars()
        rows = list(self.rows)
        for i in zero:
            row = [ZERO] * self.n
            row[i] = ONE
            rows.append(row)
        return self.n - mat_rank(rows)

    def interior_point(self):
        """A point in the relative interior (non-implicit nonnegs positive)."""
        strict = self.strict_point()
        if strict is not None:
            return strict
        pts = []
        base = self.feasible_point()
        if base is None:
            return None
        pts.append(base)
        for i in self.nonneg:
            res = self.optimize({i: 1}, sense="max")
            if res.status == "unbounded":
                # move a bounded amount along the ray from its base point
                pts.append([p + r for p, r in zip(res.point, res.ray)])
            elif res.status == "optimal" and res.value > 0:
                pts.append(res.point)
        k = Fraction(1, len(pts))
        return [sum(p[j] for p in pts) * k for j in range(self.n)]

"""Caporaso-Harris style recursion for plane curve counts.

Relative counts N(d, g, alpha, beta) enumerate reduced plane curves of
degree d and (formal) geometric genus g meeting a fixed line with
contact orders prescribed by alpha (at fixed points of the line) and
beta (at free points).  The recursion specializes one point onto the
line: either a free contact becomes a fixed one, or the line splits off
and the residual degree drops by one.

For a reduced curve with irreducible components of genera g_i, the
formal genus is sum(g_i) + 1 - m; it can be negative, down to 1 - d for
a union of d lines.  Absolute counts take alpha = 0 and beta = d simple
contacts; irreducible counts are recovered by removing the reducible
combinations, distributing the point conditions over the components.

This module is the counting oracle: it shares no code with the
floor-diagram enumeration it is used to check.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial


def _gmax(d):
    return (d - 1) * (d - 2) // 2


def _weight(vec):
    """I(vec) = sum of k * vec_k, contact orders weighted."""
    return sum((k + 1) * c for k, c in enumerate(vec))


def _norm(vec, d):
    out = list(vec) + [0] * d
    return tuple(out[:d])


@lru_cache(maxsize=None)
def relative_count(d, g, alpha, beta):
    """N(d, g, alpha, beta): curves of degree d, formal genus g, with
    contacts to a fixed line of order k at alpha_k fixed and beta_k free
    points, through 2d + g + |beta| - 1 general points."""
    if d < 1 or g > _gmax(d) or g < 1 - d:
        return 0
    alpha = _norm(alpha, d)
    beta = _norm(beta, d)
    if _weight(alpha) + _weight(beta) != d:
        raise ValueError("contact orders must add up to the degree")
    if d == 1:
        return 1 if g == 0 else 0
    total = 0
    # a point condition moves onto the line: a free contact becomes fixed
    for k in range(d):
        if beta[k] > 0:
            a2 = list(alpha)
            b2 = list(beta)
            a2[k] += 1
            b2[k] -= 1
            total += (k + 1) * relative_count(d, g, tuple(a2), tuple(b2))
    # the line splits off, leaving degree d - 1
    d2 = d - 1
    if any(beta[k] for k in range(d2, d)):
        return total  # a contact of order d cannot survive the split
    for a2 in _vectors_below(alpha, d2):
        rest = d2 - _weight(a2)
        if rest < 0:
            continue
        for b2 in _vectors_above(beta, rest, d2):
            drop = sum(b2) - sum(beta[:d2])
            g2 = g - drop + 1
            base = relative_count(d2, g2, a2, b2)
            if base == 0:
                continue
            factor = 1
            for k in range(d2):
                factor *= (k + 1) ** (b2[k] - beta[k])
                factor *= comb(alpha[k], a2[k])
                factor *= comb(b2[k], beta[k])
            total += factor * base
    return total


def _vectors_below(alpha, d2):
    """All a2 <= alpha componentwise (truncated to length d2)."""
    alpha = alpha[:d2] + (0,) * max(0, d2 - len(alpha))
    out = [()]
    for c in alpha[:d2]:
        out = [v + (k,) for v in out for k in range(c + 1)]
    return out


def _vectors_above(beta, weight_target, d2):
    """All b2 >= beta (componentwise) with I(b2) = weight_target."""
    beta = beta[:d2] + (0,) * max(0, d2 - len(beta))
    results = []

    def rec(k, acc, remaining):
        if k == d2:
            if remaining == 0:
                results.append(tuple(acc))
            return
        step = k + 1
        extra = 0
        while beta[k] * step + extra * step <= remaining:
            acc.append(beta[k] + extra)
            used = (beta[k] + extra) * step
            rec(k + 1, acc, remaining - used)
            acc.pop()
            extra += 1

    rec(0, [], weight_target)
    return results


def severi_degree(d, g):
    """Count of reduced (possibly reducible) degree-d formal-genus-g curves
    through 3d + g - 1 general points."""
    beta = (d,) + (0,) * (d - 1)
    return relative_count(d, g, (0,) * d, beta)


@lru_cache(maxsize=None)
def irreducible_severi_degree(d, g):
    """Count of irreducible degree-d genus-g curves through 3d + g - 1
    general points, by removing reducible combinations from the absolute
    count."""
    if g < 0 or g > _gmax(d):
        return 0
    total = severi_degree(d, g)
    n = 3 * d + g - 1
    for split in _component_splits(d, g):
        ways = 1
        remaining = n
        for (di, gi), mult in split:
            ni = 3 * di + gi - 1
            for _ in range(mult):
                ways *= comb(remaining, ni)
                remaining -= ni
            ways //= factorial(mult)
            ways *= irreducible_severi_degree(di, gi) ** mult
        total -= ways
    return total


def _component_splits(d, g):
    """Multisets of (degree, genus) components, at least two of them,
    with total degree d and genus bookkeeping sum(g_i) = g + m - 1."""
    out = []

    def rec(d_left, parts, max_pair):
        if d_left == 0:
            m = len(parts)
            if m >= 2 and sum(gi for _, gi in parts) == g + m - 1:
                counted = {}
                for p in parts:
                    counted[p] = counted.get(p, 0) + 1
                out.append(tuple(sorted(counted.items())))
            return
        for di in range(1, d_left + 1):
            for gi in range(0, _gmax(di) + 1):
                pair = (di, gi)
                if pair > max_pair:
                    continue
                parts.append(pair)
                rec(d_left - di, parts, pair)
                parts.pop()

    rec(d, [], (d, _gmax(d)))
    return out

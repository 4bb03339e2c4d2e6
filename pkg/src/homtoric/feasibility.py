"""Exact feasibility of systems of linear inequalities by Fourier-Motzkin elimination.

A system is a list of pairs ``(a, b)`` meaning ``a . x >= b`` with ``a`` an
integer (or rational) coefficient vector.  Everything is kept fraction-free:
each constraint is scaled to coprime integers before it is stored.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

Constraint = tuple[tuple[int, ...], int]


def _normalize(coeffs: Sequence, rhs) -> Constraint:
    den = 1
    for c in (*coeffs, rhs):
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    b = int(rhs * den)
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return tuple(ints), (1 if b > 0 else 0)
    g = gcd(g, b)
    return tuple(c // g for c in ints), b // g


def _eliminate(system: dict[Constraint, frozenset], j: int, step: int) -> dict[Constraint, frozenset]:
    pos, neg, out = [], [], {}
    for con, origin in system.items():
        a = con[0][j]
        if a > 0:
            pos.append((con, origin))
        elif a < 0:
            neg.append((con, origin))
        else:
            out[con] = origin
    for (ap, bp), op in pos:
        for (an, bn), on in neg:
            origin = op | on
            # Chernikov rule: after `step` eliminations an irredundant
            # consequence combines at most step + 1 original rows.
            if len(origin) > step + 1:
                continue
            s, t = -an[j], ap[j]
            coeffs = tuple(s * x + t * y for x, y in zip(ap, an))
            con = _normalize(coeffs, s * bp + t * bn)
            if not any(con[0]):
                if con[1] > 0:
                    return {con: origin}
                continue
            prev = out.get(con)
            if prev is None or len(origin) < len(prev):
                out[con] = origin
    return out


def solve_inequalities(constraints: Sequence[tuple[Sequence, object]], nvars: int) -> Optional[list[Fraction]]:
    """Return a rational point satisfying every ``a . x >= b``, or None.

    Variables are eliminated in index order; the point is recovered by back
    substitution, taking each variable at its tightest lower bound (upper
    bound when unbounded below, zero when free).
    """
    system: dict[Constraint, frozenset] = {}
    for k, (a, b) in enumerate(constraints):
        if len(a) != nvars:
            raise ValueError(f"constraint {k} has {len(a)} coefficients, expected {nvars}")
        con = _normalize(a, b)
        if not any(con[0]):
            if con[1] > 0:
                return None
            continue
        if con not in system:
            system[con] = frozenset([k])

    stages = []
    for j in range(nvars):
        stages.append(system)
        system = _eliminate(system, j, j + 1)
        for (a, b) in system:
            if not any(a) and b > 0:
                return None

    x: list[Fraction] = [Fraction(0)] * nvars
    for j in reversed(range(nvars)):
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for (a, b) in stages[j]:
            if a[j] == 0:
                continue
            rest = sum((Fraction(a[k]) * x[k] for k in range(j + 1, nvars)), Fraction(0))
            bound = (b - rest) / a[j]
            if a[j] > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None:
            x[j] = lo
        elif hi is not None:
            x[j] = hi
    return x

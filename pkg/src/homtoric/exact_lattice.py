"""Exact integer linear algebra on lattices.

Matrices are tuples of integer rows.  Every sublattice is stored by its
canonical row Hermite normal form, so two bases of the same lattice compare
equal with ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from homtoric.feasibility import solve_inequalities

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]


# ---------------------------------------------------------------------------
# small helpers

def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    if not M:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*M))


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    Bt = list(zip(*B)) if B else []
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def mat_vec(A: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def primitive(v: Sequence[int]) -> IntVector:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return tuple(x // g for x in v)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _elementary(a: int, b: int) -> tuple[int, int, int, int]:
    """Unimodular (x, y, u, v) sending (a, b) to (g, 0); plain subtraction when a | b."""
    if a and b % a == 0:
        return 1, 0, -(b // a), 1
    g, x, y = _xgcd(a, b)
    return x, y, -b // g, a // g


def _combine(rows: list[list[int]], r: int, i: int, x: int, y: int, u: int, v: int) -> None:
    """Replace (row r, row i) by (x*r + y*i, u*r + v*i)."""
    R, I = rows[r], rows[i]
    rows[r] = [x * p + y * q for p, q in zip(R, I)]
    rows[i] = [u * p + v * q for p, q in zip(R, I)]


# ---------------------------------------------------------------------------
# normal forms

def hermite_normal_form(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form: returns (H, U) with U unimodular and U*M = H.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows
    come last.
    """
    nrows = len(M)
    cols = len(M[0]) if nrows else (ncols or 0)
    H = [list(r) for r in M]
    U = [list(r) for r in identity(nrows)]
    r = 0
    for j in range(cols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            b = H[i][j]
            if b == 0:
                continue
            x, y, u, v = _elementary(H[r][j], b)
            _combine(H, r, i, x, y, u, v)
            _combine(U, r, i, x, y, u, v)
        p = H[r][j]
        if p == 0:
            continue
        if p < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
            p = -p
        for i in range(r):
            q = H[i][j] // p
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return as_matrix(H), as_matrix(U)


def smith_normal_form(M: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (D, U, V) with U*M*V = D.

    D is diagonal with nonnegative entries d1 | d2 | ... and zeros last.
    """
    nrows = len(M)
    cols = len(M[0]) if nrows else (ncols or 0)
    D = [list(r) for r in M]
    U = [list(r) for r in identity(nrows)]
    # V is kept transposed so that column operations become row operations.
    Vt = [list(r) for r in identity(cols)]

    def col_combine(c: int, k: int, x: int, y: int, u: int, v: int) -> None:
        for row in D:
            p, q = row[c], row[k]
            row[c], row[k] = x * p + y * q, u * p + v * q
        _combine(Vt, c, k, x, y, u, v)

    for t in range(min(nrows, cols)):
        best = None
        for i in range(t, nrows):
            for j in range(t, cols):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        if i != t:
            D[t], D[i] = D[i], D[t]
            U[t], U[i] = U[i], U[t]
        if j != t:
            col_combine(t, j, 0, 1, 1, 0)
        while True:
            for i in range(t + 1, nrows):
                b = D[i][t]
                if b:
                    x, y, u, v = _elementary(D[t][t], b)
                    _combine(D, t, i, x, y, u, v)
                    _combine(U, t, i, x, y, u, v)
            for k in range(t + 1, cols):
                b = D[t][k]
                if b:
                    col_combine(t, k, *_elementary(D[t][t], b))
            if any(D[i][t] for i in range(t + 1, nrows)):
                continue
            p = D[t][t]
            bad = next(
                (i for i in range(t + 1, nrows) for k in range(t + 1, cols) if D[i][k] % p),
                None,
            )
            if bad is None:
                break
            D[t] = [a + b for a, b in zip(D[t], D[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return as_matrix(D), as_matrix(U), transpose(Vt, cols)


# ---------------------------------------------------------------------------
# sublattices

@dataclass(frozen=True)
class SublatticeBasis:
    """Sublattice of Z^d given by its canonical row HNF basis."""

    ambient_rank: int
    basis: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return membership(v, self) is not None

    @classmethod
    def full(cls, d: int) -> "SublatticeBasis":
        return cls(d, identity(d))

    @classmethod
    def zero(cls, d: int) -> "SublatticeBasis":
        return cls(d, ())


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """Finitely generated abelian group as a divisibility chain; 0 is a free factor."""

    invariant_factors: tuple[int, ...]

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def row_span(rows: Sequence[Sequence[int]], ambient_rank: Optional[int] = None) -> SublatticeBasis:
    if ambient_rank is None:
        if not rows:
            raise ValueError("ambient_rank is required for an empty row set")
        ambient_rank = len(rows[0])
    for k, r in enumerate(rows):
        if len(r) != ambient_rank:
            raise ValueError(f"row {k} has length {len(r)}, expected {ambient_rank}")
    H, _ = hermite_normal_form(rows, ambient_rank)
    return SublatticeBasis(ambient_rank, tuple(r for r in H if any(r)))


def _pivot(row: Sequence[int]) -> int:
    return next(j for j, x in enumerate(row) if x)


def membership(v: Sequence[int], L: SublatticeBasis) -> Optional[IntVector]:
    """Integer coefficients c with c * L.basis = v, or None if v is not in L."""
    if len(v) != L.ambient_rank:
        raise ValueError(f"vector of length {len(v)} in a lattice of ambient rank {L.ambient_rank}")
    res = list(v)
    coeffs = []
    for row in L.basis:
        j = _pivot(row)
        c, rem = divmod(res[j], row[j])
        if rem:
            return None
        coeffs.append(c)
        if c:
            res = [a - c * b for a, b in zip(res, row)]
    if any(res):
        return None
    return tuple(coeffs)


def annihilator(L: SublatticeBasis) -> SublatticeBasis:
    """{w in Z^d : <w, v> = 0 for all v in L}; always saturated."""
    d = L.ambient_rank
    if not L.basis:
        return SublatticeBasis.full(d)
    H, U = hermite_normal_form(transpose(L.basis))
    kernel = [U[i] for i in range(d) if not any(H[i])]
    return row_span(kernel, d)


def saturation_and_index(L: SublatticeBasis) -> tuple[SublatticeBasis, int]:
    sat = annihilator(annihilator(L))
    D, _, _ = smith_normal_form(L.basis, L.ambient_rank)
    index = 1
    for i in range(min(len(D), L.ambient_rank)):
        if D[i][i]:
            index *= D[i][i]
    return sat, index


def preimage(F: Sequence[Sequence[int]], A: SublatticeBasis, ncols: Optional[int] = None) -> SublatticeBasis:
    """{x in Z^d : F x in A} for an m x d matrix F."""
    m = len(F)
    if m != A.ambient_rank:
        raise ValueError(f"map has {m} rows but the target lattice has ambient rank {A.ambient_rank}")
    d = len(F[0]) if m else (ncols or 0)
    # kernel of [F | -B^T] acting on (x, a)
    k = A.rank
    G = [list(F[i]) + [-A.basis[t][i] for t in range(k)] for i in range(m)]
    if not G:
        return SublatticeBasis.full(d)
    ker = annihilator(row_span(G, d + k))
    return row_span([r[:d] for r in ker.basis], d)


def image(F: Sequence[Sequence[int]], L: SublatticeBasis) -> SublatticeBasis:
    """Image {F x : x in L} of L under an m x d matrix F."""
    return row_span([mat_vec(F, b) for b in L.basis], len(F))


def quotient_invariants(A: SublatticeBasis) -> AbelianGroupInvariants:
    """Invariant factors of Z^m / A."""
    m = A.ambient_rank
    D, _, _ = smith_normal_form(A.basis, m)
    diag = [D[i][i] for i in range(min(len(D), m))]
    nonzero = [x for x in diag if x and x != 1]
    return AbelianGroupInvariants(tuple(nonzero) + (0,) * (m - sum(1 for x in diag if x)))


# ---------------------------------------------------------------------------
# sign-constrained points in rational spans

def _to_lattice(x: Sequence[Fraction], L: SublatticeBasis) -> IntVector:
    den = 1
    for c in x:
        den = lcm(den, Fraction(c).denominator)
    v = [int(c * den) for c in x]
    g = 0
    for c in v:
        g = gcd(g, c)
    v = [c // g for c in v]
    _, index = saturation_and_index(L)
    # smallest multiple of the primitive vector that lies in L; index always works
    for t in range(1, index + 1):
        if index % t == 0 and membership([t * c for c in v], L) is not None:
            return tuple(t * c for c in v)
    raise AssertionError("saturation index failed to scale witness into the lattice")


def positive_point(generators: Sequence[Sequence[int]], d: int) -> Optional[list[Fraction]]:
    """Rational point of span(generators) with every coordinate >= 1."""
    k = len(generators)
    cons = [([g[i] for g in generators], 1) for i in range(d)]
    c = solve_inequalities(cons, k)
    if c is None:
        return None
    return [sum((Fraction(g[i]) * c[t] for t, g in enumerate(generators)), Fraction(0)) for i in range(d)]


def nonneg_point(generators: Sequence[Sequence], d: int, coords: Optional[Sequence[int]] = None) -> Optional[list[Fraction]]:
    """Rational point of span(generators), nonnegative with coordinate sum 1.

    ``coords`` restricts the sign and sum conditions to a subset of coordinates.
    """
    k = len(generators)
    idx = range(d) if coords is None else coords
    cons = [([g[i] for g in generators], 0) for i in idx]
    total = [sum(g[i] for i in idx) for g in generators]
    cons.append((total, 1))
    cons.append(([-t for t in total], -1))
    c = solve_inequalities(cons, k)
    if c is None:
        return None
    return [sum((Fraction(g[i]) * c[t] for t, g in enumerate(generators)), Fraction(0)) for i in range(d)]


def strictly_positive_in_span(L: SublatticeBasis) -> Optional[IntVector]:
    """A vector of L with all coordinates > 0, or None if span_Q(L) has none."""
    x = positive_point(L.basis, L.ambient_rank)
    if x is None:
        return None
    return _to_lattice(x, L)


def nonneg_nonzero_in_span(L: SublatticeBasis) -> Optional[IntVector]:
    """A nonzero vector of L with all coordinates >= 0, or None."""
    x = nonneg_point(L.basis, L.ambient_rank)
    if x is None:
        return None
    return _to_lattice(x, L)


def rational_inverse(M: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Inverse of a square integer matrix over Q; ValueError if singular."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            raise ValueError("matrix is singular")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [row[n:] for row in A]


def independent_columns(M: Sequence[Sequence[int]]) -> list[int]:
    """Indices of a maximal set of linearly independent columns (greedy, left to right)."""
    if not M:
        return []
    H, _ = hermite_normal_form(M)
    return [_pivot(r) for r in H if any(r)]

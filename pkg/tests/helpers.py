"""Shared hypothesis strategies and independent oracles for the test suite."""

import itertools

from hypothesis import strategies as st

from homtoric.exact_lattice import row_span


def int_matrices(max_rows=6, max_cols=6, lo=-9, hi=9, min_rows=0, min_cols=1):
    return st.integers(min_cols, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                           min_size=min_rows, max_size=max_rows).map(lambda rows: (rows, c))
    )


def sublattices(max_d=6, lo=-4, hi=4):
    return int_matrices(max_rows=max_d, max_cols=max_d, lo=lo, hi=hi).map(lambda rc: row_span(rc[0], rc[1]))


def brute_in_span(v, gens, bound=6):
    """Independent membership oracle: search integer combinations with small coefficients."""
    if not gens:
        return not any(v)
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(gens)):
        if all(sum(c * g[i] for c, g in zip(coeffs, gens)) == v[i] for i in range(len(v))):
            return True
    return False


def is_hnf(H):
    """Row HNF shape: zero rows last, pivots positive and strictly right-moving, entries above pivots reduced."""
    last = -1
    seen_zero = False
    for r, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = nz[0]
        if p <= last or row[p] <= 0:
            return False
        for above in H[:r]:
            if not 0 <= above[p] < row[p]:
                return False
        last = p
    return True

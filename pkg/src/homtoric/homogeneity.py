"""Recognizing fans of homogeneous toric varieties.

A fan qualifies when its minimal non-faces split the rays into groups of at
least two (the cones being exactly the ray sets containing no whole group),
every linear relation among the rays is a combination of the group sums, and
the lattice is generated by the rays up to rational multiples of the group
sums.  Acceptance always comes with a certificate that rebuilds the fan as a
quotient and has been checked against the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import gcd, prod
from typing import Optional, Union

from homtoric.cox import GroupSizes, SubgroupSpec, degree_matrix, quotient_fan
from homtoric.exact_lattice import (
    IntMatrix,
    SublatticeBasis,
    annihilator,
    determinant,
    image,
    independent_columns,
    mat_vec,
    membership,
    rational_inverse,
    row_span,
)
from homtoric.fan import Fan

RAYS_DONT_SPAN = "RAYS_DONT_SPAN"
NOT_SIMPLICIAL = "NOT_SIMPLICIAL"
NONFACES_DONT_PARTITION = "NONFACES_DONT_PARTITION"
GROUP_TOO_SMALL = "GROUP_TOO_SMALL"
MISSING_CONE = "MISSING_CONE"
EXTRA_CONE = "EXTRA_CONE"
RELATION_CONDITION_FAILED = "RELATION_CONDITION_FAILED"
OVERLATTICE_CONDITION_FAILED = "OVERLATTICE_CONDITION_FAILED"

DEFAULT_MAX_RAYS = 20


@dataclass(frozen=True)
class GroupPartition:
    groups: tuple[tuple[int, ...], ...]
    q_vectors: tuple[tuple[int, ...], ...]
    n0_basis: SublatticeBasis

    @property
    def sizes(self) -> GroupSizes:
        return GroupSizes(tuple(len(g) for g in self.groups))


@dataclass(frozen=True)
class Rejection:
    reason: str
    detail: str
    witness: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class HomogeneityCertificate:
    """Witness that a fan is the quotient fan for ``sizes`` and ``subgroup``.

    ``ray_assignment[k]`` is the input ray hit by basis vector k (groups laid
    out consecutively); ``identification`` maps the quotient lattice onto the
    input lattice.
    """

    sizes: GroupSizes
    subgroup: SubgroupSpec
    ray_assignment: tuple[int, ...]
    identification: IntMatrix


class RoundTripFailure(RuntimeError):
    """Raised when an accepted fan fails its own certificate (an implementation bug)."""


# ---------------------------------------------------------------------------
# combinatorics

def minimal_nonfaces(f: Fan, max_rays: int = DEFAULT_MAX_RAYS) -> list[tuple[int, ...]]:
    """Inclusion-minimal ray sets that span no cone.

    Level k+1 candidates are extensions of k-element cones whose k-subsets are
    all cones; a candidate that is not itself a cone is a minimal non-face.
    """
    if f.n_rays > max_rays:
        raise ValueError(f"fan has {f.n_rays} rays; the limit is {max_rays}")
    cones = f.cones
    out = [(i,) for i in range(f.n_rays) if (i,) not in cones]
    level = [c for c in cones if len(c) == 1]
    while level:
        nxt = []
        for c in sorted(level):
            for i in range(c[-1] + 1, f.n_rays):
                cand = c + (i,)
                if any(cand[:k] + cand[k + 1:] not in cones for k in range(len(cand))):
                    continue
                if cand in cones:
                    nxt.append(cand)
                else:
                    out.append(cand)
        level = nxt
    return sorted(out, key=lambda s: (len(s), s))


def _ray_rank(f: Fan) -> int:
    if not f.rays:
        return 0
    return row_span(f.rays, f.rank).rank


def recognize_partition(f: Fan, max_rays: int = DEFAULT_MAX_RAYS) -> Union[GroupPartition, Rejection]:
    rank = _ray_rank(f)
    if rank < f.rank:
        return Rejection(RAYS_DONT_SPAN, f"rays span a rank-{rank} subspace of a rank-{f.rank} lattice",
                         {"ray_rank": rank})
    nonfaces = minimal_nonfaces(f, max_rays)
    owner: dict[int, list[tuple[int, ...]]] = {i: [] for i in range(f.n_rays)}
    for s in nonfaces:
        for i in s:
            owner[i].append(s)
    for i in range(f.n_rays):
        if len(owner[i]) != 1:
            what = "no" if not owner[i] else f"{len(owner[i])}"
            return Rejection(NONFACES_DONT_PARTITION, f"ray {i} lies in {what} minimal non-faces",
                             {"ray": i, "nonfaces": [list(s) for s in owner[i]]})
    for s in nonfaces:
        if len(s) < 2:
            return Rejection(GROUP_TOO_SMALL, f"ray {s[0]} alone is not a cone", {"nonface": list(s)})

    groups = sorted((tuple(sorted(s, key=lambda i: f.rays[i])) for s in nonfaces),
                    key=lambda g: (len(g), f.rays[g[0]]))
    group_sets = [frozenset(g) for g in groups]
    for c in sorted(f.cones):
        for g in group_sets:
            if g <= set(c):
                return Rejection(EXTRA_CONE, f"cone {list(c)} contains the whole group {sorted(g)}",
                                 {"cone": list(c), "group": sorted(g)})
    expected = prod(2 ** len(g) - 1 for g in groups)
    if len(f.cones) != expected:
        for choice in product(*[
            [sub for k in range(len(g)) for sub in combinations(sorted(g), k)] for g in groups
        ]):
            c = tuple(sorted(i for part in choice for i in part))
            if c not in f.cones:
                return Rejection(MISSING_CONE, f"ray set {list(c)} contains no group but is not a cone",
                                 {"cone": list(c)})
    q = tuple(tuple(sum(f.rays[i][t] for i in g) for t in range(f.rank)) for g in groups)
    return GroupPartition(tuple(groups), q, row_span(f.rays, f.rank))


def relation_violation(f: Fan, p: GroupPartition) -> Optional[tuple[int, ...]]:
    """An integer relation among the rays that is not constant on some group, if any."""
    for rel in f.relations:
        for g in p.groups:
            if len({rel[i] for i in g}) > 1:
                return tuple(rel)
    return None


def check_relations(f: Fan, p: GroupPartition) -> bool:
    return relation_violation(f, p) is None


def overlattice_violation(f: Fan, p: GroupPartition) -> Optional[dict]:
    """Certificate that some basis vector e_i lies outside N0 + Q_Q.

    Returns {"basis_index": i, "functional": phi, "modulus": g} where phi
    vanishes on every group sum, phi(ray) is divisible by g for every ray and
    phi(e_i) is not; None when the condition holds.
    """
    r = f.rank
    Q = row_span(p.q_vectors, r)
    P = annihilator(Q).basis
    k = len(P)
    if k == 0:
        return None
    img = image(P, p.n0_basis)
    if img.rank < k:
        raise ValueError("rays do not span the lattice")
    B = img.basis
    g = abs(determinant(B))
    if g == 1:
        return None
    inv = rational_inverse(B)
    for i in range(r):
        e = tuple(int(t == i) for t in range(r))
        v = mat_vec(P, e)
        if membership(v, img) is not None:
            continue
        # v * B^{-1} has a fractional coordinate t; g * (column t of B^{-1}) is an integral functional
        coeffs = [sum(v[s] * inv[s][t] for s in range(k)) for t in range(k)]
        t = next(t for t, c in enumerate(coeffs) if c.denominator != 1)
        y = [int(g * inv[s][t]) for s in range(k)]
        phi = [sum(y[s] * P[s][c] for s in range(k)) for c in range(r)]
        h = gcd(g, *phi)
        return {"basis_index": i, "functional": [x // h for x in phi], "modulus": g // h}
    raise AssertionError("index > 1 but every basis vector lies in the image")


def check_overlattice(f: Fan, p: GroupPartition) -> bool:
    return overlattice_violation(f, p) is None


# ---------------------------------------------------------------------------
# certificates

def solve_identification(f: Fan, sizes: GroupSizes, subgroup: SubgroupSpec,
                         ray_assignment: tuple[int, ...]) -> Optional[IntMatrix]:
    """The unimodular map taking the rebuilt quotient fan onto f, or None."""
    if len(ray_assignment) != sizes.d or sorted(ray_assignment) != list(range(f.n_rays)):
        return None
    q = quotient_fan(sizes, subgroup)
    if q.rank != f.rank:
        return None
    r = f.rank
    src = [[q.fan.rays[k][t] for k in range(sizes.d)] for t in range(r)]
    dst = [[f.rays[ray_assignment[k]][t] for k in range(sizes.d)] for t in range(r)]
    cols = independent_columns(src)
    if len(cols) != r:
        return None
    inv = rational_inverse([[src[t][c] for c in cols] for t in range(r)])
    psi = []
    for t in range(r):
        row = [sum(dst[t][c] * inv[a][b] for a, c in enumerate(cols)) for b in range(r)]
        if any(x.denominator != 1 for x in row):
            return None
        psi.append(tuple(int(x) for x in row))
    psi = tuple(psi)
    for k in range(sizes.d):
        if mat_vec(psi, q.fan.rays[k]) != f.rays[ray_assignment[k]]:
            return None
    if abs(determinant(psi)) != 1:
        return None
    mapped = frozenset(tuple(sorted(ray_assignment[k] for k in c)) for c in q.fan.cones)
    if mapped != f.cones:
        return None
    return psi


def verify_certificate(f: Fan, c: HomogeneityCertificate) -> bool:
    if c.subgroup.m != c.sizes.m:
        return False
    psi = solve_identification(f, c.sizes, c.subgroup, c.ray_assignment)
    return psi is not None and psi == c.identification


def classify(f: Fan, max_rays: int = DEFAULT_MAX_RAYS) -> Union[HomogeneityCertificate, Rejection]:
    part = recognize_partition(f, max_rays)
    if isinstance(part, Rejection):
        return part
    bad = relation_violation(f, part)
    if bad is not None:
        return Rejection(RELATION_CONDITION_FAILED,
                         f"relation {list(bad)} is not a combination of group sums",
                         {"relation": list(bad), "groups": [list(g) for g in part.groups]})
    cert = overlattice_violation(f, part)
    if cert is not None:
        return Rejection(OVERLATTICE_CONDITION_FAILED,
                         f"basis vector e{cert['basis_index'] + 1} is not in N0 + Q_Q", cert)

    sizes = part.sizes
    assignment = tuple(i for g in part.groups for i in g)
    d = sizes.d
    # characters of the big torus coming from the dual of N, then their group sums
    pairing = [[f.rays[a][t] for a in assignment] for t in range(f.rank)]
    m_star = row_span(pairing, d)
    A = image(degree_matrix(sizes), m_star)
    subgroup = SubgroupSpec(A)
    psi = solve_identification(f, sizes, subgroup, assignment)
    if psi is None:
        raise RoundTripFailure(f"accepted fan {f!r} does not round-trip for sizes {sizes.sizes}")
    c = HomogeneityCertificate(sizes, subgroup, assignment, psi)
    if not verify_certificate(f, c):
        raise RoundTripFailure(f"certificate for {f!r} fails verification")
    return c


def acting_group_options(c: Union[HomogeneityCertificate, GroupSizes]) -> list[tuple[str, ...]]:
    """Possible simple factors per group: SL(n) always, Sp(n) as well for even n."""
    sizes = c.sizes if isinstance(c, HomogeneityCertificate) else c
    return [(f"SL({n})", f"Sp({n})") if n % 2 == 0 else (f"SL({n})",) for n in sizes.sizes]


def recheck_rejection(f: Fan, rej: Rejection) -> bool:
    """Re-validate a rejection's witness by direct computation on the fan."""
    w = rej.witness
    if rej.reason == RAYS_DONT_SPAN:
        return _ray_rank(f) == w["ray_rank"] < f.rank
    if rej.reason in (NONFACES_DONT_PARTITION, GROUP_TOO_SMALL):
        brute = _brute_minimal_nonfaces(f)
        if rej.reason == GROUP_TOO_SMALL:
            return tuple(w["nonface"]) in brute and len(w["nonface"]) < 2
        containing = [s for s in brute if w["ray"] in s]
        return len(containing) != 1 and sorted(map(list, containing)) == sorted(w["nonfaces"])
    if rej.reason == EXTRA_CONE:
        return tuple(w["cone"]) in f.cones and set(w["group"]) <= set(w["cone"])
    if rej.reason == MISSING_CONE:
        return tuple(w["cone"]) not in f.cones
    if rej.reason == RELATION_CONDITION_FAILED:
        rel = w["relation"]
        zero = all(sum(rel[i] * f.rays[i][t] for i in range(f.n_rays)) == 0 for t in range(f.rank))
        nonconstant = any(len({rel[i] for i in g}) > 1 for g in w["groups"])
        return zero and nonconstant and any(rel)
    if rej.reason == OVERLATTICE_CONDITION_FAILED:
        phi, g, i = w["functional"], w["modulus"], w["basis_index"]
        part = recognize_partition(f)
        if isinstance(part, Rejection):
            return False
        return (
            all(sum(a * b for a, b in zip(phi, q)) == 0 for q in part.q_vectors)
            and all(sum(a * b for a, b in zip(phi, p)) % g == 0 for p in f.rays)
            and phi[i] % g != 0
        )
    return False


def _brute_minimal_nonfaces(f: Fan) -> list[tuple[int, ...]]:
    nonfaces = [s for k in range(1, f.n_rays + 1) for s in combinations(range(f.n_rays), k) if s not in f.cones]
    return [s for s in nonfaces if all(s[:k] + s[k + 1:] in f.cones for k in range(len(s)))]


def quotient_certificate(sizes: GroupSizes, subgroup: SubgroupSpec) -> HomogeneityCertificate:
    """Certificate of the quotient fan against itself (identity assignment and identification)."""
    q = quotient_fan(sizes, subgroup)
    c = HomogeneityCertificate(sizes, subgroup, tuple(range(sizes.d)),
                               tuple(tuple(int(i == j) for j in range(q.rank)) for i in range(q.rank)))
    if not verify_certificate(q.fan, c):
        raise RoundTripFailure(f"quotient for sizes {sizes.sizes} fails its identity certificate")
    return c

"""Simplicial rational polyhedral fans.

A fan is a lattice rank, a list of primitive rays and a set of cones, each
cone being a sorted tuple of ray indices.  Every cone is simplicial, so the
face lattice of a cone is the power set of its rays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import gcd, lcm
from typing import Optional, Sequence

from homtoric.exact_lattice import (
    IntMatrix,
    IntVector,
    annihilator,
    mat_vec,
    nonneg_point,
    row_span,
)

Cone = tuple[int, ...]

NON_PRIMITIVE_RAY = "NON_PRIMITIVE_RAY"
DUPLICATE_RAY = "DUPLICATE_RAY"
NOT_SIMPLICIAL = "NOT_SIMPLICIAL"
BAD_INTERSECTION = "BAD_INTERSECTION"
INDEX_OUT_OF_RANGE = "INDEX_OUT_OF_RANGE"
DIMENSION_MISMATCH = "DIMENSION_MISMATCH"
IMAGE_NOT_FAN = "IMAGE_NOT_FAN"
ZERO_IMAGE_RAY = "ZERO_IMAGE_RAY"


class FanError(ValueError):
    def __init__(self, code: str, detail: str = "", witness=None):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code
        self.detail = detail
        self.witness = witness


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple[IntVector, ...]
    cones: frozenset[Cone] = field(repr=False)

    @cached_property
    def maximal_cones(self) -> tuple[Cone, ...]:
        by_size = sorted(self.cones, key=len, reverse=True)
        kept: list[frozenset] = []
        for c in by_size:
            s = frozenset(c)
            if not any(s < k for k in kept):
                kept.append(s)
        return tuple(sorted(tuple(sorted(k)) for k in kept))

    @cached_property
    def relations(self) -> IntMatrix:
        """Basis of the integer linear relations among the rays."""
        return ray_relations(self.rays, self.rank)

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def dim(self) -> int:
        """Largest cone dimension."""
        return max(len(c) for c in self.cones)

    def __repr__(self) -> str:
        return f"Fan(rank={self.rank}, rays={list(self.rays)}, maximal_cones={list(self.maximal_cones)})"

    def canonical(self) -> tuple["Fan", tuple[int, ...]]:
        """Same fan with rays sorted lexicographically, plus old-index -> new-index map."""
        order = sorted(range(self.n_rays), key=lambda i: self.rays[i])
        new_index = [0] * self.n_rays
        for new, old in enumerate(order):
            new_index[old] = new
        rays = tuple(self.rays[i] for i in order)
        cones = frozenset(tuple(sorted(new_index[i] for i in c)) for c in self.cones)
        return Fan(self.rank, rays, cones), tuple(new_index)


def ray_relations(rays: Sequence[Sequence[int]], rank: int) -> IntMatrix:
    if not rays:
        return ()
    coords = [[r[i] for r in rays] for i in range(rank)]
    return annihilator(row_span(coords, len(rays))).basis


def relations_supported_on(relations: IntMatrix, support: Sequence[int]) -> list[IntVector]:
    """Basis of the relations whose nonzero entries all lie in ``support``."""
    if not relations:
        return []
    n = len(relations[0])
    inside = set(support)
    outside = [i for i in range(n) if i not in inside]
    if not outside:
        return [tuple(r) for r in relations]
    k = len(relations)
    cols = [[relations[t][i] for t in range(k)] for i in outside]
    mu = annihilator(row_span(cols, k)).basis
    return [tuple(sum(m[t] * relations[t][i] for t in range(k)) for i in range(n)) for m in mu]


def _mask_of(idx) -> int:
    m = 0
    for i in idx:
        m |= 1 << i
    return m


def _mask(x: Sequence[int], sign: int) -> int:
    return _mask_of(i for i, v in enumerate(x) if v * sign > 0)


def circuits(relations: IntMatrix) -> list[IntVector]:
    """Minimal-support relations, one per support, scaled to primitive with leading entry > 0.

    With k independent relations, each circuit is the unique (up to scale)
    relation vanishing on some k - 1 chosen coordinates.
    """
    if not relations:
        return []
    k, n = len(relations), len(relations[0])
    found: dict[IntVector, None] = {}
    for zeros in combinations(range(n), k - 1):
        if zeros:
            cols = [[relations[t][i] for t in range(k)] for i in zeros]
            mu = annihilator(row_span(cols, k)).basis
            if len(mu) != 1:
                continue
            x = [sum(mu[0][t] * relations[t][i] for t in range(k)) for i in range(n)]
        else:
            x = relations[0]
        g = 0
        for v in x:
            g = gcd(g, v)
        x = tuple(v // g for v in x)
        if next(v for v in x if v) < 0:
            x = tuple(-v for v in x)
        found[x] = None
    return list(found)


def crossing_witness(relations: IntMatrix, c1: Cone, c2: Cone) -> Optional[IntVector]:
    """A relation showing that cones c1, c2 overlap outside their common face.

    The returned integer vector r satisfies sum r_i p_i = 0, r >= 0 on c1 \\ c2,
    r <= 0 on c2 \\ c1 and r != 0 there; None when the cones meet properly.
    """
    s1, s2 = set(c1), set(c2)
    rels = relations_supported_on(relations, sorted(s1 | s2))
    if not rels:
        return None
    only1 = sorted(s1 - s2)
    only2 = sorted(s2 - s1)
    if not only1 and not only2:
        return None
    flipped = [tuple(-x if i in s2 and i not in s1 else x for i, x in enumerate(r)) for r in rels]
    n = len(rels[0])
    point = nonneg_point(flipped, n, only1 + only2)
    if point is None:
        return None
    den = 1
    for x in point:
        den = lcm(den, x.denominator)
    v = [int(x * den) for x in point]
    return tuple(-x if i in s2 and i not in s1 else x for i, x in enumerate(v))


def make_fan(rank: int, ray_vectors: Sequence[Sequence[int]], maximal_cones: Sequence[Sequence[int]]) -> Fan:
    """Build and validate a simplicial fan from rays and generating cones."""
    rays: list[IntVector] = []
    seen: dict[IntVector, int] = {}
    for i, v in enumerate(ray_vectors):
        v = tuple(int(x) for x in v)
        if len(v) != rank:
            raise FanError(DIMENSION_MISMATCH, f"ray {i} has length {len(v)}, lattice rank is {rank}", i)
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1:
            raise FanError(NON_PRIMITIVE_RAY, f"ray {i} = {list(v)} is not primitive", i)
        if v in seen:
            raise FanError(DUPLICATE_RAY, f"rays {seen[v]} and {i} coincide", (seen[v], i))
        seen[v] = i
        rays.append(v)

    gens: list[Cone] = []
    for c in maximal_cones:
        idx = tuple(sorted(set(int(i) for i in c)))
        for i in idx:
            if not 0 <= i < len(rays):
                raise FanError(INDEX_OUT_OF_RANGE, f"cone {list(c)} refers to ray {i}", tuple(c))
        gens.append(idx)

    relations = ray_relations(rays, rank)
    circ = circuits(relations)
    masks = [(_mask(x, 1), _mask(x, -1), x) for x in circ]
    for c in gens:
        cm = _mask_of(c)
        for pos, neg, x in masks:
            if (pos | neg) & ~cm == 0:
                raise FanError(NOT_SIMPLICIAL, f"rays of cone {list(c)} are linearly dependent", (c, x))

    sets = sorted({frozenset(c) for c in gens}, key=len, reverse=True)
    maximal: list[frozenset] = []
    for s in sets:
        if not any(s <= k for k in maximal):
            maximal.append(s)
    maxcones = [tuple(sorted(s)) for s in maximal]
    # A collection of simplicial cones is a fan iff no circuit has both its
    # positive and its negative part inside cones.
    max_masks = [(_mask_of(c), c) for c in maxcones]
    for pos, neg, x in masks:
        a = next((c for cm, c in max_masks if pos & ~cm == 0), None)
        if a is None:
            continue
        b = next((c for cm, c in max_masks if neg & ~cm == 0), None)
        if b is not None:
            raise FanError(
                BAD_INTERSECTION,
                f"cones {list(a)} and {list(b)} meet outside a common face",
                (a, b, x),
            )

    cones: set[Cone] = {()}
    for c in maxcones:
        for k in range(1, len(c) + 1):
            cones.update(combinations(c, k))
    fan = Fan(rank, tuple(rays), frozenset(cones))
    fan.__dict__["relations"] = relations
    return fan


def fan_equal(f1: Fan, f2: Fan) -> bool:
    """Coordinate-level equality after sorting rays; not up to GL(Z)."""
    if f1.rank != f2.rank or f1.n_rays != f2.n_rays:
        return False
    c1, _ = f1.canonical()
    c2, _ = f2.canonical()
    return c1.rays == c2.rays and c1.cones == c2.cones


def has_full_dim_cone(f: Fan) -> bool:
    return any(len(c) == f.rank for c in f.cones)


def image_rays(f: Fan, T: Sequence[Sequence[int]]) -> tuple[list[IntVector], list[int]]:
    """Primitive image rays (deduplicated) and the map from old to new ray index."""
    out: list[IntVector] = []
    where: dict[IntVector, int] = {}
    index = []
    for i, p in enumerate(f.rays):
        v = mat_vec(T, p)
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 0:
            raise FanError(ZERO_IMAGE_RAY, f"ray {i} = {list(p)} maps to zero", i)
        v = tuple(x // g for x in v)
        if v not in where:
            where[v] = len(out)
            out.append(v)
        index.append(where[v])
    return out, index


def apply_lattice_map(f: Fan, T: Sequence[Sequence[int]]) -> Fan:
    """Image of a fan under an integer r x d matrix, re-validated as a fan."""
    for row in T:
        if len(row) != f.rank:
            raise FanError(DIMENSION_MISMATCH, f"map has {len(row)} columns, fan rank is {f.rank}")
    rays, index = image_rays(f, T)
    cones = [sorted({index[i] for i in c}) for c in f.maximal_cones]
    try:
        return make_fan(len(T), rays, cones)
    except FanError as exc:
        raise FanError(IMAGE_NOT_FAN, f"image is not a fan ({exc})", exc.witness) from exc

"""Quotients of punctured products of affine spaces by subgroups of the central torus.

The space is the product of (k^{n_j} minus the origin) over the groups j.  A
closed subgroup S of the m-dimensional central torus is encoded by the
lattice A of characters of that torus which are trivial on S.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Sequence

from homtoric.exact_lattice import (
    IntMatrix,
    SublatticeBasis,
    identity,
    preimage,
    row_span,
)
from homtoric.fan import Fan, apply_lattice_map, make_fan


@dataclass(frozen=True)
class GroupSizes:
    sizes: tuple[int, ...]

    def __post_init__(self):
        if not self.sizes:
            raise ValueError("at least one group is required")
        for j, n in enumerate(self.sizes):
            if int(n) != n or n < 2:
                raise ValueError(f"group {j} has size {n}; every group needs at least 2 coordinates")
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))

    @property
    def m(self) -> int:
        return len(self.sizes)

    @property
    def d(self) -> int:
        return sum(self.sizes)

    def groups(self) -> list[tuple[int, ...]]:
        """Basis indices of each group, consecutively numbered."""
        out, start = [], 0
        for n in self.sizes:
            out.append(tuple(range(start, start + n)))
            start += n
        return out

    def cone_count(self) -> int:
        return prod(2**n - 1 for n in self.sizes)


@dataclass(frozen=True)
class SubgroupSpec:
    """Characters of the central torus vanishing on S, as a canonical sublattice of Z^m."""

    relations: SublatticeBasis

    @property
    def m(self) -> int:
        return self.relations.ambient_rank

    @classmethod
    def from_generators(cls, m: int, generators: Sequence[Sequence[int]]) -> "SubgroupSpec":
        return cls(row_span(list(generators), m))

    @property
    def connected_dim(self) -> int:
        """Dimension of the identity component of S."""
        return self.m - self.relations.rank


@dataclass(frozen=True)
class QuotientPresentation:
    sizes: GroupSizes
    subgroup: SubgroupSpec
    ms_basis: SublatticeBasis
    projection: IntMatrix
    fan: Fan

    @property
    def rank(self) -> int:
        return len(self.projection)


def punctured_fan(sizes: GroupSizes) -> Fan:
    """Fan of the punctured product: basis subsets containing no whole group."""
    groups = sizes.groups()
    maximal = [
        sorted(i for g, drop in zip(groups, choice) for i in g if i != drop)
        for choice in product(*groups)
    ]
    return make_fan(sizes.d, identity(sizes.d), maximal)


def degree_matrix(sizes: GroupSizes) -> IntMatrix:
    """Restriction of characters to the central torus: row j sums the coordinates of group j."""
    groups = sizes.groups()
    return tuple(tuple(int(k in g) for k in range(sizes.d)) for g in groups)


def _check_m(sizes: GroupSizes, S: SubgroupSpec) -> None:
    if S.m != sizes.m:
        raise ValueError(f"subgroup lives in a rank-{S.m} character lattice but there are {sizes.m} groups")


def character_lattice(sizes: GroupSizes, S: SubgroupSpec) -> SublatticeBasis:
    """Characters of the big torus that are trivial on S."""
    _check_m(sizes, S)
    return preimage(degree_matrix(sizes), S.relations)


def quotient_fan(sizes: GroupSizes, S: SubgroupSpec) -> QuotientPresentation:
    """Fan of the quotient by S, in the lattice dual to the character lattice.

    Pairing with the HNF basis of the character lattice is the projection, so
    the finite part of S is absorbed into the choice of target lattice.  Ray k
    of the result is the image of basis vector k.
    """
    ms = character_lattice(sizes, S)
    projection = ms.basis
    fan = apply_lattice_map(punctured_fan(sizes), projection)
    if fan.n_rays != sizes.d or len(fan.cones) != sizes.cone_count():
        raise AssertionError(f"quotient of {sizes.sizes} by {S.relations.basis} lost rays or cones")
    return QuotientPresentation(sizes, S, ms, projection, fan)


def product_projective_fan(sizes: GroupSizes) -> Fan:
    """Fan of the product of projective spaces built directly, one block per group.

    Group j with n rays uses e_1, ..., e_{n-1}, -(e_1 + ... + e_{n-1}) in its
    own coordinate block; maximal cones omit exactly one ray of every group.
    """
    r = sizes.d - sizes.m
    rays, groups, offset = [], [], 0
    for n in sizes.sizes:
        g = []
        for k in range(n - 1):
            v = [0] * r
            v[offset + k] = 1
            g.append(len(rays))
            rays.append(v)
        v = [0] * r
        for k in range(n - 1):
            v[offset + k] = -1
        g.append(len(rays))
        rays.append(v)
        groups.append(g)
        offset += n - 1
    maximal = [
        sorted(i for g, drop in zip(groups, choice) for i in g if i != drop)
        for choice in product(*groups)
    ]
    return make_fan(r, rays, maximal)


def complement_components(sizes: GroupSizes) -> list[tuple[int, int]]:
    """(group number, dimension) of each coordinate subspace removed from affine space.

    Groups are numbered from 1; component j is where all coordinates of group j vanish.
    """
    return [(j + 1, sizes.d - n) for j, n in enumerate(sizes.sizes)]

"""Geometric properties of a homogeneous toric variety read off its certificate."""

from __future__ import annotations

from dataclasses import dataclass

from homtoric.cox import character_lattice, quotient_fan
from homtoric.exact_lattice import (
    AbelianGroupInvariants,
    nonneg_nonzero_in_span,
    quotient_invariants,
    strictly_positive_in_span,
)
from homtoric.fan import has_full_dim_cone
from homtoric.homogeneity import HomogeneityCertificate, acting_group_options


@dataclass(frozen=True)
class PropertyReport:
    quasiprojective: bool
    affine: bool
    projective: bool
    quasiaffine: bool
    has_nonconstant_regular_functions: bool
    has_torus_fixed_point: bool
    dimension: int
    class_group: AbelianGroupInvariants
    acting_groups: list[tuple[str, ...]]


class InconsistentProperties(AssertionError):
    pass


def is_projective(c: HomogeneityCertificate) -> bool:
    """Projective exactly when S is the whole central torus (no surviving characters)."""
    by_subgroup = c.subgroup.relations.rank == 0
    by_fan = has_full_dim_cone(quotient_fan(c.sizes, c.subgroup).fan)
    if by_subgroup != by_fan:
        raise InconsistentProperties(
            f"projectivity test disagrees for sizes {c.sizes.sizes}, relations {c.subgroup.relations.basis}"
        )
    return by_subgroup


def quasiaffine_witness(c: HomogeneityCertificate):
    return strictly_positive_in_span(character_lattice(c.sizes, c.subgroup))


def is_quasiaffine(c: HomogeneityCertificate) -> bool:
    return quasiaffine_witness(c) is not None


def regular_function_witness(c: HomogeneityCertificate):
    return nonneg_nonzero_in_span(character_lattice(c.sizes, c.subgroup))


def has_nonconstant_regular_functions(c: HomogeneityCertificate) -> bool:
    return regular_function_witness(c) is not None


def property_report(c: HomogeneityCertificate) -> PropertyReport:
    q = quotient_fan(c.sizes, c.subgroup)
    projective = is_projective(c)
    report = PropertyReport(
        # homogeneous spaces of affine groups are quasiprojective, and the
        # punctured product is never all of affine space, so never affine
        quasiprojective=True,
        affine=False,
        projective=projective,
        quasiaffine=is_quasiaffine(c),
        has_nonconstant_regular_functions=has_nonconstant_regular_functions(c),
        has_torus_fixed_point=has_full_dim_cone(q.fan),
        dimension=c.sizes.d - c.subgroup.connected_dim,
        class_group=quotient_invariants(c.subgroup.relations),
        acting_groups=acting_group_options(c),
    )
    if report.dimension != q.rank:
        raise InconsistentProperties("dimension differs from the rank of the quotient lattice")
    return report

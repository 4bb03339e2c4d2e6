"""Fans of homogeneous toric varieties: quotient construction, recognition, properties."""

from homtoric.cox import (
    GroupSizes,
    QuotientPresentation,
    SubgroupSpec,
    character_lattice,
    complement_components,
    degree_matrix,
    punctured_fan,
    quotient_fan,
)
from homtoric.fan import Fan, FanError, apply_lattice_map, fan_equal, has_full_dim_cone, make_fan
from homtoric.homogeneity import (
    HomogeneityCertificate,
    Rejection,
    acting_group_options,
    classify,
    verify_certificate,
)
from homtoric.properties import PropertyReport, property_report

__all__ = [
    "Fan", "FanError", "GroupSizes", "HomogeneityCertificate", "PropertyReport",
    "QuotientPresentation", "Rejection", "SubgroupSpec", "acting_group_options",
    "apply_lattice_map", "character_lattice", "classify", "complement_components",
    "degree_matrix", "fan_equal", "has_full_dim_cone", "make_fan", "property_report",
    "punctured_fan", "quotient_fan", "verify_certificate",
]

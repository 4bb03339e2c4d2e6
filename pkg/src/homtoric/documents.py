"""JSON documents for fans, certificates, rejections and property reports.

Emitters produce canonical content (sorted rays and cones, fixed key order);
parsers check every field and raise DocumentError naming the offending one.
"""

from __future__ import annotations

import json
from typing import Any

from homtoric.cox import GroupSizes, SubgroupSpec
from homtoric.exact_lattice import AbelianGroupInvariants
from homtoric.fan import Fan, make_fan
from homtoric.homogeneity import HomogeneityCertificate, Rejection, quotient_certificate
from homtoric.properties import PropertyReport


class DocumentError(ValueError):
    def __init__(self, message: str, field: str = "", line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.field = field
        self.line = line
        self.column = column

    def as_dict(self) -> dict:
        out: dict[str, Any] = {"error": str(self)}
        if self.field:
            out["field"] = self.field
        if self.line is not None:
            out["line"] = self.line
            out["column"] = self.column
        return out


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"expected an integer, got {json.dumps(x)}", where)
    return x


def _int_list(x: Any, where: str) -> list[int]:
    if not isinstance(x, list):
        raise DocumentError(f"expected a list of integers, got {json.dumps(x)}", where)
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(x)]


def _int_matrix(x: Any, where: str) -> list[list[int]]:
    if not isinstance(x, list):
        raise DocumentError(f"expected a list of integer lists, got {json.dumps(x)}", where)
    return [_int_list(v, f"{where}[{i}]") for i, v in enumerate(x)]


def _require(doc: Any, key: str, *aliases: str) -> Any:
    if not isinstance(doc, dict):
        raise DocumentError("expected a JSON object", "")
    for k in (key, *aliases):
        if k in doc:
            return doc[k]
    raise DocumentError(f"missing required field '{key}'", key)


# ---------------------------------------------------------------------------
# fans

def fan_to_doc(f: Fan) -> dict:
    c, _ = f.canonical()
    return {
        "rank": c.rank,
        "rays": [list(r) for r in c.rays],
        "maximal_cones": [list(m) for m in c.maximal_cones if m],
    }


def fan_fields(doc: Any) -> tuple[int, list[list[int]], list[list[int]]]:
    """Type-checked (rank, rays, maximal_cones) without fan validation."""
    rank = _int(_require(doc, "rank"), "rank")
    if rank < 0:
        raise DocumentError("rank must be nonnegative", "rank")
    rays = _int_matrix(_require(doc, "rays"), "rays")
    for i, r in enumerate(rays):
        if len(r) != rank:
            raise DocumentError(f"ray has length {len(r)} but rank is {rank}", f"rays[{i}]")
    cones = _int_matrix(_require(doc, "maximal_cones"), "maximal_cones")
    return rank, rays, cones


def fan_from_doc(doc: Any) -> Fan:
    """Parse and validate; invalid fans raise FanError."""
    return make_fan(*fan_fields(doc))


# ---------------------------------------------------------------------------
# certificates

def certificate_to_doc(c: HomogeneityCertificate) -> dict:
    return {
        "group_sizes": list(c.sizes.sizes),
        "subgroup_relations": [list(r) for r in c.subgroup.relations.basis],
        "ray_assignment": list(c.ray_assignment),
        "identification": [list(r) for r in c.identification],
    }


def certificate_fields(doc: Any) -> tuple[GroupSizes, SubgroupSpec, list[int] | None, list[list[int]] | None]:
    sizes_raw = _int_list(_require(doc, "group_sizes", "sizes"), "group_sizes")
    try:
        sizes = GroupSizes(tuple(sizes_raw))
    except ValueError as exc:
        raise DocumentError(str(exc), "group_sizes") from exc
    rels = _int_matrix(_require(doc, "subgroup_relations", "relations"), "subgroup_relations")
    for i, r in enumerate(rels):
        if len(r) != sizes.m:
            raise DocumentError(f"relation has length {len(r)} but there are {sizes.m} groups",
                                f"subgroup_relations[{i}]")
    subgroup = SubgroupSpec.from_generators(sizes.m, rels)
    assignment = doc.get("ray_assignment")
    if assignment is not None:
        assignment = _int_list(assignment, "ray_assignment")
        if len(assignment) != sizes.d:
            raise DocumentError(f"ray_assignment needs {sizes.d} entries", "ray_assignment")
    ident = doc.get("identification")
    if ident is not None:
        ident = _int_matrix(ident, "identification")
    return sizes, subgroup, assignment, ident


def certificate_from_doc(doc: Any) -> HomogeneityCertificate:
    """Full certificate; missing assignment/identification default to the quotient's own."""
    sizes, subgroup, assignment, ident = certificate_fields(doc)
    base = quotient_certificate(sizes, subgroup)
    return HomogeneityCertificate(
        sizes,
        subgroup,
        tuple(assignment) if assignment is not None else base.ray_assignment,
        tuple(tuple(r) for r in ident) if ident is not None else base.identification,
    )


def rejection_to_doc(r: Rejection) -> dict:
    return {"reason": r.reason, "detail": r.detail, "witness": r.witness}


def rejection_from_doc(doc: Any) -> Rejection:
    return Rejection(_require(doc, "reason"), _require(doc, "detail"), dict(doc.get("witness", {})))


# ---------------------------------------------------------------------------
# property reports

def report_to_doc(r: PropertyReport) -> dict:
    return {
        "quasiprojective": r.quasiprojective,
        "affine": r.affine,
        "projective": r.projective,
        "quasiaffine": r.quasiaffine,
        "has_nonconstant_regular_functions": r.has_nonconstant_regular_functions,
        "has_torus_fixed_point": r.has_torus_fixed_point,
        "dimension": r.dimension,
        "class_group": {
            "invariant_factors": list(r.class_group.invariant_factors),
            "description": str(r.class_group),
        },
        "acting_groups": [list(g) for g in r.acting_groups],
    }


def report_from_doc(doc: Any) -> PropertyReport:
    flags = {}
    for key in ("quasiprojective", "affine", "projective", "quasiaffine",
                "has_nonconstant_regular_functions", "has_torus_fixed_point"):
        v = _require(doc, key)
        if not isinstance(v, bool):
            raise DocumentError("expected true or false", key)
        flags[key] = v
    cg = _require(doc, "class_group")
    factors = _int_list(_require(cg, "invariant_factors"), "class_group.invariant_factors")
    groups = _require(doc, "acting_groups")
    if not isinstance(groups, list) or not all(isinstance(g, list) for g in groups):
        raise DocumentError("expected a list of lists of group names", "acting_groups")
    return PropertyReport(
        **flags,
        dimension=_int(_require(doc, "dimension"), "dimension"),
        class_group=AbelianGroupInvariants(tuple(factors)),
        acting_groups=[tuple(str(x) for x in g) for g in groups],
    )

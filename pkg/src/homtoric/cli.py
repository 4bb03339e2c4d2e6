"""Command line front end.

Exit status: 0 success, 1 classification rejection, 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from homtoric import documents as docs
from homtoric.cox import GroupSizes, SubgroupSpec, punctured_fan, quotient_fan
from homtoric.documents import DocumentError
from homtoric.exact_lattice import identity
from homtoric.fan import NOT_SIMPLICIAL, FanError, has_full_dim_cone, make_fan
from homtoric.homogeneity import (
    DEFAULT_MAX_RAYS,
    HomogeneityCertificate,
    Rejection,
    classify,
    quotient_certificate,
)
from homtoric.properties import property_report
from homtoric.roundtrip import RoundtripConfig, run_roundtrip

EXIT_OK, EXIT_REJECTED, EXIT_INVALID = 0, 1, 2


class UsageError(ValueError):
    pass


def _emit(doc) -> None:
    sys.stdout.write(docs.dumps(doc) + "\n")


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    return docs.loads(text)


def parse_sizes(text: str) -> GroupSizes:
    try:
        return GroupSizes(tuple(int(x) for x in text.split(",") if x.strip()))
    except ValueError as exc:
        raise DocumentError(f"bad --sizes '{text}': {exc}", "--sizes") from exc


def parse_relations(text: str, m: int) -> SubgroupSpec:
    """'a11,...,a1m;a21,...' -> subgroup; empty string means no relations."""
    rows = []
    for k, chunk in enumerate(s for s in text.split(";") if s.strip()):
        try:
            row = [int(x) for x in chunk.split(",")]
        except ValueError as exc:
            raise DocumentError(f"relation {k} is not a list of integers: '{chunk}'", "--relations") from exc
        if len(row) != m:
            raise DocumentError(f"relation {k} has {len(row)} entries, expected {m}", "--relations")
        rows.append(row)
    return SubgroupSpec.from_generators(m, rows)


def _load_fan(path: str):
    """Fan from a document, or a Rejection for non-simplicial input."""
    rank, rays, cones = docs.fan_fields(_read_json(path))
    try:
        return make_fan(rank, rays, cones)
    except FanError as exc:
        if exc.code == NOT_SIMPLICIAL:
            cone, rel = exc.witness
            return Rejection(NOT_SIMPLICIAL, exc.detail, {"cone": list(cone), "relation": list(rel)})
        raise


def cmd_build(args) -> int:
    _emit(docs.fan_to_doc(punctured_fan(parse_sizes(args.sizes))))
    return EXIT_OK


def cmd_quotient(args) -> int:
    sizes = parse_sizes(args.sizes)
    S = parse_relations(args.relations or "", sizes.m)
    q = quotient_fan(sizes, S)
    _, new_index = q.fan.canonical()
    cert = HomogeneityCertificate(sizes, S, tuple(new_index), identity(q.rank))
    out = docs.fan_to_doc(q.fan)
    out["certificate"] = docs.certificate_to_doc(cert)
    _emit(out)
    return EXIT_OK


def cmd_classify(args) -> int:
    f = _load_fan(args.fan)
    result = f if isinstance(f, Rejection) else classify(f, args.max_rays)
    if isinstance(result, Rejection):
        _emit(docs.rejection_to_doc(result))
        return EXIT_REJECTED
    _emit(docs.certificate_to_doc(result))
    return EXIT_OK


def cmd_properties(args) -> int:
    if (args.fan is None) == (args.cert is None):
        raise UsageError("give exactly one of a fan file or --cert")
    if args.cert is not None:
        # only sizes and relations matter; any ray assignment refers to some other fan
        sizes, subgroup, _, _ = docs.certificate_fields(_read_json(args.cert))
        cert = quotient_certificate(sizes, subgroup)
    else:
        f = _load_fan(args.fan)
        cert = f if isinstance(f, Rejection) else classify(f, args.max_rays)
        if isinstance(cert, Rejection):
            _emit(docs.rejection_to_doc(cert))
            return EXIT_REJECTED
    _emit(docs.report_to_doc(property_report(cert)))
    return EXIT_OK


def cmd_validate(args) -> int:
    rank, rays, cones = docs.fan_fields(_read_json(args.fan))
    try:
        f = make_fan(rank, rays, cones)
    except FanError as exc:
        witness = exc.witness
        _emit({"valid": False, "error": exc.code, "detail": exc.detail,
               "witness": _jsonable(witness)})
        return EXIT_INVALID
    _emit({
        "valid": True,
        "rank": f.rank,
        "rays": f.n_rays,
        "cones": len(f.cones),
        "maximal_cones": len(f.maximal_cones),
        "max_cone_dim": f.dim,
        "has_full_dim_cone": has_full_dim_cone(f),
        "relation_rank": len(f.relations),
    })
    return EXIT_OK


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def cmd_roundtrip(args) -> int:
    if args.trials < 0 or args.max_m < 1 or args.max_n < 2:
        raise UsageError("need --trials >= 0, --max-m >= 1, --max-n >= 2")
    cfg = RoundtripConfig(trials=args.trials, seed=args.seed, max_m=args.max_m, max_n=args.max_n)
    start = time.perf_counter()
    report = run_roundtrip(cfg)
    print(f"roundtrip: {report['passed']}/{report['trials']} in {time.perf_counter() - start:.2f}s",
          file=sys.stderr)
    _emit(report)
    return EXIT_OK if not report["failures"] else EXIT_REJECTED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homtoric", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="fan of the punctured product of affine spaces")
    b.add_argument("--sizes", required=True, help="comma-separated group sizes, each >= 2")
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("quotient", help="quotient fan by a subgroup of the central torus")
    q.add_argument("--sizes", required=True)
    q.add_argument("--relations", default="",
                   help="characters vanishing on S: 'a11,...,a1m;a21,...' (empty: S is the whole torus)")
    q.set_defaults(func=cmd_quotient)

    c = sub.add_parser("classify", help="decide homogeneity of a fan")
    c.add_argument("fan")
    c.add_argument("--max-rays", type=int, default=DEFAULT_MAX_RAYS)
    c.set_defaults(func=cmd_classify)

    pr = sub.add_parser("properties", help="property report for a fan or a certificate")
    pr.add_argument("fan", nargs="?")
    pr.add_argument("--cert")
    pr.add_argument("--max-rays", type=int, default=DEFAULT_MAX_RAYS)
    pr.set_defaults(func=cmd_properties)

    v = sub.add_parser("validate", help="check fan invariants")
    v.add_argument("fan")
    v.set_defaults(func=cmd_validate)

    r = sub.add_parser("roundtrip", help="randomized generate-and-recognize suite")
    r.add_argument("--trials", type=int, required=True)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--max-m", type=int, default=3)
    r.add_argument("--max-n", type=int, default=4)
    r.set_defaults(func=cmd_roundtrip)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except DocumentError as exc:
        _emit(exc.as_dict())
        where = f" ({exc.field})" if exc.field else ""
        where += f" at line {exc.line}, column {exc.column}" if exc.line is not None else ""
        print(f"error{where}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (FanError, UsageError, ValueError) as exc:
        _emit({"error": str(exc), **({"code": exc.code} if isinstance(exc, FanError) else {})})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

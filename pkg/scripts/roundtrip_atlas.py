#!/usr/bin/env python3
"""Tabulate quotient fans over a grid of sizes and subgroups and re-recognize each one.

Writes one JSON line per case: sizes, generators of A, rank, class group,
projective/quasiaffine flags, and whether classify recovered the same A.
"""

import argparse
import itertools
import json
import sys
import time

from homtoric.cox import GroupSizes, SubgroupSpec, quotient_fan
from homtoric.exact_lattice import row_span
from homtoric.homogeneity import HomogeneityCertificate, classify
from homtoric.properties import property_report
from homtoric.roundtrip import recovered_matches


def generator_sets(m, bound):
    vecs = [v for v in itertools.product(range(-bound, bound + 1), repeat=m)]
    yield []
    for v in vecs:
        if any(v):
            yield [list(v)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-d", type=int, default=6)
    ap.add_argument("--max-m", type=int, default=2)
    ap.add_argument("--bound", type=int, default=2)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)

    out = sys.stdout if args.out == "-" else open(args.out, "w")
    seen, bad, start = 0, 0, time.perf_counter()
    for m in range(1, args.max_m + 1):
        for sizes in itertools.product(range(2, args.max_d + 1), repeat=m):
            if sum(sizes) > args.max_d:
                continue
            g = GroupSizes(sizes)
            done = set()
            for gens in generator_sets(m, args.bound):
                A = row_span(gens, m)
                if A in done:
                    continue
                done.add(A)
                S = SubgroupSpec(A)
                f = quotient_fan(g, S).fan
                cert = classify(f)
                ok = isinstance(cert, HomogeneityCertificate) and recovered_matches(g, S, list(range(g.d)), cert)
                bad += not ok
                seen += 1
                r = property_report(cert) if ok else None
                out.write(json.dumps({
                    "sizes": list(sizes),
                    "A": [list(b) for b in A.basis],
                    "rank": f.rank,
                    "class_group": str(r.class_group) if r else None,
                    "projective": r.projective if r else None,
                    "quasiaffine": r.quasiaffine if r else None,
                    "recovered": ok,
                }) + "\n")
    print(f"{seen} cases, {bad} not recovered, {time.perf_counter() - start:.1f}s", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

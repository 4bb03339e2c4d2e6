#!/usr/bin/env python3
"""Print the worked examples: quotients, classifications and property reports."""

import json

from homtoric.cox import GroupSizes, SubgroupSpec, quotient_fan
from homtoric.fan import make_fan
from homtoric.homogeneity import Rejection, classify, quotient_certificate
from homtoric.properties import property_report

QUOTIENTS = [
    ("punctured C^2 x C^2 mod diagonal", (2, 2), [(1, -1)]),
    ("quadric cone minus apex", (2, 2), [(1, 1)]),
    ("P^1 x P^2", (2, 3), []),
    ("punctured plane mod mu_2", (2,), [(2,)]),
    ("punctured C^3 mod mu_4 x C*", (3, 2), [(4, 0), (0, 1)]),
]

FANS = [
    ("projective plane", [(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [0, 2]]),
    ("P^1 x A^1", [(1, 0), (-1, 0), (0, 1)], [[0, 2], [1, 2]]),
    ("blow-up of P^2", [(1, 0), (0, 1), (-1, -1), (1, 1)], [[0, 3], [3, 1], [1, 2], [2, 0]]),
    ("rays (1,0),(3,4)", [(1, 0), (3, 4)], [[0], [1]]),
    ("rays (1,0),(1,4)", [(1, 0), (1, 4)], [[0], [1]]),
]


def main():
    for name, sizes, gens in QUOTIENTS:
        g = GroupSizes(sizes)
        S = SubgroupSpec.from_generators(g.m, [list(v) for v in gens])
        q = quotient_fan(g, S)
        r = property_report(quotient_certificate(g, S))
        print(f"{name}: rank {q.rank}, rays {list(q.fan.rays)}")
        print(f"  projective={r.projective} quasiaffine={r.quasiaffine} "
              f"regular functions={r.has_nonconstant_regular_functions} "
              f"dim={r.dimension} Cl={r.class_group} groups={r.acting_groups}")
    print()
    for name, rays, cones in FANS:
        result = classify(make_fan(len(rays[0]), rays, cones))
        if isinstance(result, Rejection):
            print(f"{name}: rejected {result.reason} {json.dumps(result.witness)}")
        else:
            print(f"{name}: sizes {result.sizes.sizes}, A = {list(result.subgroup.relations.basis)}")


if __name__ == "__main__":
    main()

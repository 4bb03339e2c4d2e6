"""Randomized generate-then-recognize experiments."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass

from homtoric.cox import GroupSizes, SubgroupSpec, quotient_fan
from homtoric.exact_lattice import row_span
from homtoric.fan import Fan
from homtoric.homogeneity import HomogeneityCertificate, Rejection, classify, verify_certificate


@dataclass(frozen=True)
class RoundtripConfig:
    trials: int = 500
    seed: int = 0
    max_m: int = 3
    max_n: int = 4
    entry_bound: int = 3
    shuffle_rays: bool = True


def random_case(rng: random.Random, cfg: RoundtripConfig) -> tuple[GroupSizes, SubgroupSpec]:
    m = rng.randint(1, cfg.max_m)
    sizes = GroupSizes(tuple(rng.randint(2, cfg.max_n) for _ in range(m)))
    k = rng.randint(0, m)
    gens = [[rng.randint(-cfg.entry_bound, cfg.entry_bound) for _ in range(m)] for _ in range(k)]
    return sizes, SubgroupSpec.from_generators(m, gens)


def permute_rays(f: Fan, perm: list[int]) -> Fan:
    """Fan with ray i moved to position perm[i]."""
    rays = [None] * f.n_rays
    for i, p in enumerate(perm):
        rays[p] = f.rays[i]
    cones = frozenset(tuple(sorted(perm[i] for i in c)) for c in f.cones)
    return Fan(f.rank, tuple(rays), cones)


def recovered_matches(sizes: GroupSizes, S: SubgroupSpec, perm: list[int], cert: HomogeneityCertificate) -> bool:
    """Does the recovered subgroup equal the original one after matching up groups?"""
    group_of = {}
    for j, g in enumerate(sizes.groups()):
        for k in g:
            group_of[perm[k]] = j
    order = []
    for g in cert.sizes.groups():
        order.append(group_of[cert.ray_assignment[g[0]]])
    if sorted(order) != list(range(sizes.m)):
        return False
    moved = [[row[j] for j in order] for row in S.relations.basis]
    return row_span(moved, sizes.m) == cert.subgroup.relations


def run_trial(sizes: GroupSizes, S: SubgroupSpec, perm: list[int]) -> dict:
    q = quotient_fan(sizes, S)
    f = permute_rays(q.fan, perm)
    result = classify(f)
    entry = {
        "sizes": list(sizes.sizes),
        "relations": [list(r) for r in S.relations.basis],
        "rays": q.fan.n_rays,
        "cones": len(q.fan.cones),
    }
    if isinstance(result, Rejection):
        entry.update(ok=False, reason=result.reason, detail=result.detail)
        return entry
    entry["ok"] = verify_certificate(f, result) and recovered_matches(sizes, S, perm, result)
    return entry


def run_roundtrip(cfg: RoundtripConfig) -> dict:
    """Deterministic for a fixed config: no timings or unordered data in the report."""
    rng = random.Random(cfg.seed)
    failures = []
    for t in range(cfg.trials):
        sizes, S = random_case(rng, cfg)
        perm = list(range(sizes.d))
        if cfg.shuffle_rays:
            rng.shuffle(perm)
        entry = run_trial(sizes, S, perm)
        if not entry["ok"]:
            failures.append({"trial": t, **entry})
    return {
        "config": asdict(cfg),
        "trials": cfg.trials,
        "passed": cfg.trials - len(failures),
        "failures": failures,
    }

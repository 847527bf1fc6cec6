"""Compare the cone-off distance formula against two oracles.

The local oracle searches the segment graph; the wider oracle also lets
paths leave the segment through random nearby vertices.

    python scripts/coneoff_stress.py --pairs 200 --extra 6
"""
import argparse
import json
import random
from dataclasses import asdict, dataclass

from sctree.automorphism import standard_maps
from sctree.bassserre import geodesic
from sctree.coneoff import (
    ConeOffConfig,
    classify_edges,
    coneoff_distance,
    coneoff_oracle,
    random_neighbor,
    sample_pairs,
    wider_oracle,
)
from sctree.galois import get_field
from sctree.smallcancel import choose_exponent


@dataclass
class StressConfig:
    prime: int = 3
    delta: int = 6
    pairs: int = 200
    extra: int = 6
    max_dist: int = 30
    seed: int = 7


def run(cfg: StressConfig) -> dict:
    F = get_field(cfg.prime)
    g = standard_maps(F)["bt"].to_word()
    cc = ConeOffConfig(choose_exponent(g, "coneoff", cfg.delta, cfg.delta))
    rng = random.Random(cfg.seed)
    local_bad = wide_bad = hops = 0
    pairs = sample_pairs(cc, cfg.pairs, rng, cfg.max_dist)
    for x, y in pairs:
        local = classify_edges(x, y, cc)
        d = coneoff_distance(x, y, cc, local)
        hops += d.hops > 0
        local_bad += d.value != coneoff_oracle(x, y, cc, local)[0]
        extra = []
        for _ in range(cfg.extra):
            v = rng.choice(geodesic(x, y))
            extra.append(random_neighbor(random_neighbor(v, rng, F), rng, F))
        wide_bad += d.value != wider_oracle(x, y, cc, extra)
    return {"pairs": len(pairs), "pairs_with_hops": hops, "local_mismatches": local_bad, "wider_mismatches": wide_bad}


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    for f, v in asdict(StressConfig()).items():
        ap.add_argument(f"--{f.replace('_', '-')}", type=int, default=v)
    cfg = StressConfig(**vars(ap.parse_args()))
    print(json.dumps({"config": asdict(cfg), "result": run(cfg)}, indent=2))

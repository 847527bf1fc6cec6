"""Sweep the Greendlinger verifier over presentation sizes.

For each m_max the verifier samples presentations and tallies verdicts,
configuration orders and how far ℓ(h) exceeds ℓ(gⁿ).

    python scripts/sct_sweep.py --samples 50 --m-max 2 4 6
"""
import argparse
import json
from collections import Counter
from dataclasses import asdict, dataclass

from sctree.automorphism import standard_maps
from sctree.galois import get_field
from sctree.greendlinger import sct_verify
from sctree.smallcancel import choose_exponent


@dataclass
class SweepConfig:
    prime: int = 3
    B: int = 6
    samples: int = 50
    seed: int = 42
    conj_len: int = 3
    m_max: tuple = (2, 4)


def sweep(cfg: SweepConfig) -> list[dict]:
    g = standard_maps(get_field(cfg.prime))["bt"].to_word()
    params = choose_exponent(g, "greendlinger", cfg.B, cfg.B)
    rows = []
    for m_max in cfg.m_max:
        res = sct_verify(params, cfg.samples, cfg.seed, m_max=m_max, conj_len=cfg.conj_len)
        excess = [r.ell_h - params.ell for r in res if r.verdict == "PASS"]
        rows.append({
            "m_max": m_max,
            "verdicts": dict(Counter(r.verdict for r in res)),
            "config_orders": dict(Counter(k for r in res for k in r.config_orders)),
            "min_excess": min(excess, default=None),
            "mean_rounds": sum(r.rewrite_rounds for r in res) / len(res),
        })
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--prime", type=int, default=3)
    ap.add_argument("--B", type=int, default=6)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--conj-len", type=int, default=3)
    ap.add_argument("--m-max", type=int, nargs="+", default=[2, 4])
    a = ap.parse_args()
    cfg = SweepConfig(a.prime, a.B, a.samples, a.seed, a.conj_len, tuple(a.m_max))
    print(json.dumps({"config": asdict(cfg), "rows": sweep(cfg)}, indent=2))

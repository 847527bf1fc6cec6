"""Run acceptance criteria and write one JSON summary.

    python scripts/run_acceptance.py --criteria 1 2 5 --out results/acceptance.json
"""
import argparse
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from sctree.acceptance import CRITERIA, run_criterion


@dataclass
class AcceptanceConfig:
    criteria: list = field(default_factory=lambda: sorted(CRITERIA))
    out: str | None = None


def main(cfg: AcceptanceConfig) -> int:
    rows = []
    for n in cfg.criteria:
        r = run_criterion(n)
        print(f"criterion {n}: {'PASS' if r.passed else 'FAIL'} ({r.title}, {r.seconds:.1f} s)", flush=True)
        rows.append({"criterion": n, "title": r.title, "pass": r.passed, "seconds": round(r.seconds, 1),
                     "checks": [c.to_json() for c in r.checks]})
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps({"config": asdict(cfg), "results": rows}, indent=2, default=str))
    return 0 if all(r["pass"] for r in rows) else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--criteria", type=int, nargs="+", default=sorted(CRITERIA))
    ap.add_argument("--out")
    raise SystemExit(main(AcceptanceConfig(**vars(ap.parse_args()))))

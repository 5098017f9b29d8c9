"""Random-word growth study: CSV rows plus the fitted step bound and envelope slope."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from bplarge.euclid import envelope_slope, fit_step_bound, growth_experiment, rows_to_csv


@dataclass
class Config:
    rank: int = 2
    lengths: list[int] = field(default_factory=lambda: [100, 1000, 10000])
    samples: int = 200
    seed: int = 0
    jobs: int = 1
    out: str = "growth.csv"


def main(cfg: Config) -> None:
    rows = growth_experiment(cfg.rank, cfg.lengths, cfg.samples, cfg.seed, jobs=cfg.jobs)
    with open(cfg.out, "w", encoding="utf-8") as fh:
        fh.write(rows_to_csv(rows))
    C, D = fit_step_bound(rows)
    print(f"rows={len(rows)} seed={cfg.seed}")
    print(f"steps <= {C:.3f} log2(l) + {D:.3f}")
    print(f"envelope slope {envelope_slope(rows):.3f}")
    print(f"per-step bound violations {sum(not r['per_step_ok'] for r in rows)}")
    for L in cfg.lengths:
        sub = [r for r in rows if r["length"] == L]
        if sub:
            print(f"  l={L}: max final {max(r['final_length'] for r in sub)}, max steps {max(r['steps'] for r in sub)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--lengths", default="100,1000,10000")
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="growth.csv")
    a = ap.parse_args()
    main(Config(a.rank, [int(x) for x in a.lengths.split(",")], a.samples, a.seed, a.jobs, a.out))
    sys.exit(0)

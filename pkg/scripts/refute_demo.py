"""Low-index refutation on a few small groups, one line per conjugacy class."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from bplarge.lowindex import refute_largeness_at_index
from bplarge.presentation import parse

GROUPS = {
    "klein": "generators: a b\nrelator: a^2\nrelator: b^2\nrelator: a b a b",
    "z2": "generators: a b\nrelator: a b a^-1 b^-1",
    "s3": "generators: a b\nrelator: a^2\nrelator: b^2\nrelator: a b a b a b",
    "trefoil": "generators: a b\nrelator: a a a b^-1 b^-1",
}


@dataclass
class Config:
    index: int = 4
    jobs: int = 1


def main(cfg: Config) -> None:
    for name, text in GROUPS.items():
        ref = refute_largeness_at_index(parse(text), cfg.index, jobs=cfg.jobs)
        print(f"{name}: {ref.verdict} ({len(ref.records)} classes up to index {cfg.index})")
        for r in ref.records:
            print(f"  index {r.index}: free rank {r.free_rank}, torsion {r.torsion}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--index", type=int, default=4)
    ap.add_argument("--jobs", type=int, default=1)
    a = ap.parse_args()
    main(Config(a.index, a.jobs))

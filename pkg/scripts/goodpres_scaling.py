"""How long the good presentation gets as the relator count grows.

Each elimination multiplies every relator by that stage's growth factor, so
the output length compounds with m.  Runs are capped by --max-seconds.
"""
from __future__ import annotations

import argparse
import random
import time
from dataclasses import dataclass

from bplarge.goodpres import make_good
from bplarge.presentation import Presentation
from bplarge.word import cyclic_reduce, random_reduced_word


@dataclass
class Config:
    rank: int = 6
    length: int = 60
    samples: int = 5
    seed: int = 1
    max_seconds: float = 60.0


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    names = tuple(f"x{i}" for i in range(cfg.rank))
    start = time.perf_counter()
    print("m,sample,input_total,output_total,moves,seconds")
    for m in range(1, cfg.rank - 1):
        for s in range(cfg.samples):
            if time.perf_counter() - start > cfg.max_seconds:
                print("# time cap reached")
                return
            rels = []
            while len(rels) < m:
                w = cyclic_reduce(random_reduced_word(cfg.rank, cfg.length, rng))
                if w:
                    rels.append(w)
            p = Presentation(names, tuple(rels))
            t0 = time.perf_counter()
            g = make_good(p, shortcut=False)
            dt = time.perf_counter() - t0
            total_in = sum(map(len, p.relators))
            total_out = sum(map(len, g.base.relators))
            print(f"{m},{s},{total_in},{total_out},{len(g.automorphism.moves)},{dt:.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rank", type=int, default=6)
    ap.add_argument("--length", type=int, default=60)
    ap.add_argument("--samples", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--max-seconds", type=float, default=60.0)
    a = ap.parse_args()
    main(Config(a.rank, a.length, a.samples, a.seed, a.max_seconds))

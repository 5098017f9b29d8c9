"""Euclid step counts on x^F(n) y^F(n+1), the slowest case for the quotient rule.

Words grow fast: n = 19 (exponents up to F(20)) ends near 78 million letters.
"""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass

from bplarge.euclid import zero_pair
from bplarge.word import Word


@dataclass
class Config:
    n_max: int = 20
    C: float = 3.0
    D: float = 5.0


def fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def main(cfg: Config) -> None:
    print("n,length,steps,bound,final_length,productP")
    for n in range(2, cfg.n_max):
        w = Word.gen(0, fib(n)) * Word.gen(1, fib(n + 1))
        _, w2, tr = zero_pair(w, 0, 1, 2)
        bound = cfg.C * math.log2(len(w)) + cfg.D
        print(f"{n},{len(w)},{tr.step_count},{bound:.2f},{len(w2)},{tr.product_P}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=20)
    main(Config(n_max=ap.parse_args().n_max))

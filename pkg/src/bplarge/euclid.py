"""Driving exponent sums to zero with Nielsen moves (Euclid with length tracking).

Each Euclid step picks the pair member with the smaller exponent sum ``X``
and the larger one ``Y`` and replaces the smaller generator ``x`` by
``x y^-c`` with ``c = Y // X``.  This leaves ``X`` alone, sends ``Y`` to
``Y mod X`` and can at most multiply the word length by ``c + 1``.
"""
from __future__ import annotations

import csv
import io
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .nielsen import Automorphism, Inv, NielsenMove, RightMult, Swap, apply_move
from .word import MalformedInput, Word, exponent_vector, occurrences, random_reduced_word


@dataclass(frozen=True)
class GrowthStep:
    move: NielsenMove
    c: int
    length_after: int
    exponents_after: tuple[int, int]


@dataclass(frozen=True)
class GrowthTrace:
    initial_length: int
    steps: tuple[GrowthStep, ...] = ()

    @property
    def product_P(self) -> int:
        return math.prod(s.c + 1 for s in self.steps)

    @property
    def final_length(self) -> int:
        return self.steps[-1].length_after if self.steps else self.initial_length

    @property
    def step_count(self) -> int:
        return len(self.steps)

    def lengths(self) -> list[int]:
        return [self.initial_length] + [s.length_after for s in self.steps]

    def per_step_bound_holds(self) -> bool:
        ls = self.lengths()
        return all(ls[k + 1] <= (s.c + 1) * ls[k] for k, s in enumerate(self.steps))

    def __add__(self, other: "GrowthTrace") -> "GrowthTrace":
        if other.initial_length != self.final_length:
            raise ValueError("traces do not chain")
        return GrowthTrace(self.initial_length, self.steps + other.steps)

    def summary(self) -> dict:
        return {
            "initial_length": self.initial_length,
            "final_length": self.final_length,
            "productP": self.product_P,
        }


class InvalidPair(MalformedInput):
    pass


def _survivor(w: Word, i: int, j: int) -> int:
    # tie X == Y: the generator with more letter occurrences keeps the sum
    li, lj = sum(occurrences(w, i)), sum(occurrences(w, j))
    if li != lj:
        return i if li > lj else j
    return min(i, j)


def zero_pair(
    w: Word, i: int, j: int, rank: int
) -> tuple[Automorphism, Word, GrowthTrace]:
    """Make the exponent sum of generator ``i`` or ``j`` vanish.

    Returns ``(a, a(w), trace)``.  The surviving sum is ``gcd(X_i, X_j)``
    (positive unless the input already had a zero, which returns the
    identity).  Sign flips are recorded as ``Inv`` moves but are not trace
    steps, since they never change the length.
    """
    if i == j:
        raise InvalidPair(f"zero_pair needs two distinct generators, got {i} twice")
    if not (0 <= i < rank and 0 <= j < rank):
        raise MalformedInput(f"generator pair ({i}, {j}) out of rank {rank}")
    vec = exponent_vector(w, rank)
    trace_steps: list[GrowthStep] = []
    moves: list[NielsenMove] = []
    if vec[i] == 0 or vec[j] == 0:
        return Automorphism.identity(rank), w, GrowthTrace(len(w))
    initial = len(w)
    for g in (i, j):
        if vec[g] < 0:
            m = Inv(g)
            moves.append(m)
            w = apply_move(m, w)
            vec[g] = -vec[g]
    while vec[i] and vec[j]:
        if vec[i] == vec[j]:
            small = _survivor(w, i, j)
        else:
            small = i if vec[i] < vec[j] else j
        big = j if small == i else i
        c = vec[big] // vec[small]
        m = RightMult(small, big, -c)
        moves.append(m)
        w = apply_move(m, w)
        vec[big] -= c * vec[small]
        trace_steps.append(GrowthStep(m, c, len(w), (vec[i], vec[j])))
    return Automorphism(rank, tuple(moves)), w, GrowthTrace(initial, tuple(trace_steps))


def zero_all_but_one(
    w: Word, order, rank: int
) -> tuple[Automorphism, Word, GrowthTrace]:
    """Chain ``zero_pair`` along ``order`` so only ``order[-1]`` keeps a sum."""
    order = list(order)
    if rank < 2:
        raise MalformedInput("zero_all_but_one needs rank >= 2")
    if len(order) < 2:
        raise MalformedInput("need at least two generators in order")
    if len(set(order)) != len(order) or any(not 0 <= g < rank for g in order):
        raise MalformedInput(f"bad generator order {order}")
    moves: list[NielsenMove] = []
    trace = GrowthTrace(len(w))
    for p, q in zip(order, order[1:]):
        a, w, t = zero_pair(w, p, q, rank)
        moves.extend(a.moves)
        trace = trace + t
        vec = exponent_vector(w, rank)
        if vec[p] != 0:
            # the zero landed on q; move it to p
            m = Swap(p, q)
            moves.append(m)
            w = apply_move(m, w)
    return Automorphism(rank, tuple(moves)), w, trace


def trace_automorphism(a: Automorphism, w: Word) -> tuple[Word, GrowthTrace]:
    """Replay ``a`` on ``w`` move by move, recording every RightMult as a step.

    Used for words that ride along with moves chosen for some other word.
    ``exponents_after`` records the sums of the move's own two generators.
    """
    initial = len(w)
    steps = []
    for m in a.moves:
        w = apply_move(m, w)
        if isinstance(m, RightMult):
            vec = exponent_vector(w, a.rank)
            steps.append(GrowthStep(m, abs(m.e), len(w), (vec[m.i], vec[m.j])))
    return w, GrowthTrace(initial, tuple(steps))


@dataclass
class GrowthConfig:
    rank: int = 2
    lengths: list[int] = field(default_factory=lambda: [100, 1000, 10000])
    samples: int = 200
    seed: int = 0
    jobs: int = 1


CSV_HEADER = ["length", "final_length", "steps", "productP", "seed", "sample"]


def sample_word(rank: int, length: int, sample: int, seed: int) -> Word:
    """The word behind one growth-study row; each row has its own stream."""
    return random_reduced_word(rank, length, random.Random(f"{seed}:{rank}:{length}:{sample}"))


def _growth_row(args):
    rank, length, sample, seed = args
    w = sample_word(rank, length, sample, seed)
    _, w2, trace = zero_all_but_one(w, range(rank), rank)
    return {
        "length": len(w),
        "final_length": len(w2),
        "steps": trace.step_count,
        "productP": trace.product_P,
        "seed": seed,
        "sample": sample,
        "per_step_ok": trace.per_step_bound_holds(),
        "max_c": max((s.c for s in trace.steps), default=0),
    }


def growth_experiment(rank: int, lengths, samples_per_length: int, seed: int, jobs: int = 1) -> list[dict]:
    """One row per random word; rows ordered by (length, sample) whatever ``jobs`` is."""
    if rank < 2:
        raise MalformedInput("growth_experiment needs rank >= 2")
    tasks = [(rank, L, s, seed) for L in lengths if L > 0 for s in range(samples_per_length)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_growth_row, tasks, chunksize=16))
    return [_growth_row(t) for t in tasks]


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def fit_step_bound(rows: list[dict]) -> tuple[float, float]:
    """Least-squares (C, D) for steps ~ C log2(length) + D, with D then raised
    so the line bounds every row."""
    xs = [math.log2(r["length"]) for r in rows if r["length"] > 1]
    ys = [r["steps"] for r in rows if r["length"] > 1]
    if len(set(xs)) < 2:
        return 0.0, float(max(ys, default=0))
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    C = max(sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx, 0.0)
    D = max(y - C * x for x, y in zip(xs, ys))
    return C, D


def envelope_slope(rows: list[dict]) -> float:
    """Log-log slope of max final length against input length."""
    best: dict[int, int] = {}
    for r in rows:
        best[r["length"]] = max(best.get(r["length"], 0), r["final_length"])
    pts = [(math.log(L), math.log(v)) for L, v in sorted(best.items()) if L > 1 and v > 0]
    if len(pts) < 2:
        raise ValueError("need at least two lengths for a slope")
    n = len(pts)
    mx = sum(p[0] for p in pts) / n
    my = sum(p[1] for p in pts) / n
    return sum((x - mx) * (y - my) for x, y in pts) / sum((x - mx) ** 2 for x, _ in pts)

"""Elementary Nielsen moves and their finite compositions.

Moves act on words by substitution and are applied left to right, so an
``Automorphism(rank, (m1, m2))`` sends ``w`` to ``m2(m1(w))``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

from .word import MalformedInput, Word, exponent_vector, substitute


@dataclass(frozen=True)
class Inv:
    """x_i -> x_i^-1"""

    i: int

    def indices(self):
        return (self.i,)

    def inverse(self) -> "Inv":
        return self


@dataclass(frozen=True)
class RightMult:
    """x_i -> x_i x_j^e"""

    i: int
    j: int
    e: int

    def __post_init__(self):
        if self.i == self.j:
            raise MalformedInput("RightMult needs i != j")
        if self.e == 0:
            raise MalformedInput("RightMult needs a nonzero exponent")

    def indices(self):
        return (self.i, self.j)

    def inverse(self) -> "RightMult":
        return RightMult(self.i, self.j, -self.e)


@dataclass(frozen=True)
class Swap:
    """x_i <-> x_j"""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise MalformedInput("Swap needs i != j")

    def indices(self):
        return (self.i, self.j)

    def inverse(self) -> "Swap":
        return self


NielsenMove = Union[Inv, RightMult, Swap]


def move_images(m: NielsenMove, rank: int) -> list[Word]:
    images = [Word.gen(k) for k in range(rank)]
    if max(m.indices()) >= rank or min(m.indices()) < 0:
        raise MalformedInput(f"{m} out of rank {rank}")
    if isinstance(m, Inv):
        images[m.i] = Word.gen(m.i, -1)
    elif isinstance(m, RightMult):
        images[m.i] = Word.gen(m.i) * Word.gen(m.j, m.e)
    else:
        images[m.i], images[m.j] = images[m.j], images[m.i]
    return images


def _move_codes(m: NielsenMove, w: Word) -> list[int]:
    # direct letter rewrite for a single move; avoids building image tables
    out: list[int] = []
    if isinstance(m, Inv):
        gi = m.i + 1
        return [-c if abs(c) == gi else c for c in w.codes]
    if isinstance(m, Swap):
        gi, gj = m.i + 1, m.j + 1
        sw = {gi: gj, -gi: -gj, gj: gi, -gj: -gi}
        return [sw.get(c, c) for c in w.codes]
    gi = m.i + 1
    pos = (gi,) + ((m.j + 1) if m.e > 0 else -(m.j + 1),) * abs(m.e)
    neg = tuple(-c for c in reversed(pos))
    for c in w.codes:
        if c == gi:
            seq = pos
        elif c == -gi:
            seq = neg
        elif out and out[-1] == -c:
            out.pop()
            continue
        else:
            out.append(c)
            continue
        # seq is reduced, so cancellation only happens at the seam
        k = 0
        while k < len(seq) and out and out[-1] == -seq[k]:
            out.pop()
            k += 1
        out.extend(seq[k:] if k else seq)
    return out


def apply_move(m: NielsenMove, w: Word, rank: int | None = None) -> Word:
    hi = max(m.indices())
    if rank is not None and hi >= rank:
        raise MalformedInput(f"{m} out of rank {rank}")
    return Word._trusted(_move_codes(m, w))


@dataclass(frozen=True)
class Automorphism:
    rank: int
    moves: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))
        for m in self.moves:
            if max(m.indices()) >= self.rank or min(m.indices()) < 0:
                raise MalformedInput(f"{m} out of rank {self.rank}")

    @classmethod
    def identity(cls, rank: int) -> "Automorphism":
        return cls(rank, ())

    def then(self, other: "Automorphism") -> "Automorphism":
        """Apply ``self`` first, then ``other``."""
        if other.rank != self.rank:
            raise MalformedInput("rank mismatch")
        return Automorphism(self.rank, self.moves + other.moves)

    @cached_property
    def images(self) -> tuple[Word, ...]:
        """Images of the generators; ``apply`` is substitution by these."""
        imgs = [Word.gen(k) for k in range(self.rank)]
        for m in self.moves:
            imgs = [apply_move(m, w) for w in imgs]
        return tuple(imgs)

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __len__(self) -> int:
        return len(self.moves)


def apply(a: Automorphism, w: Word) -> Word:
    if w.max_index() >= a.rank:
        raise MalformedInput(f"word uses a generator outside rank {a.rank}")
    if not a.moves:
        return w
    return substitute(w, a.images)


def apply_stepwise(a: Automorphism, w: Word) -> Word:
    """The literal left-to-right fold of ``apply_move``."""
    for m in a.moves:
        w = apply_move(m, w, a.rank)
    return w


def inverse(a: Automorphism) -> Automorphism:
    return Automorphism(a.rank, tuple(m.inverse() for m in reversed(a.moves)))


def move_matrix(m: NielsenMove, rank: int) -> list[list[int]]:
    M = [[int(r == c) for c in range(rank)] for r in range(rank)]
    if isinstance(m, Inv):
        M[m.i][m.i] = -1
    elif isinstance(m, RightMult):
        # every x_i contributes e copies of x_j
        M[m.j][m.i] = m.e
    else:
        M[m.i][m.i] = M[m.j][m.j] = 0
        M[m.i][m.j] = M[m.j][m.i] = 1
    return M


def matmul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    cols = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in A]


def matvec(A: list[list[int]], v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in A]


def abelianized_matrix(a: Automorphism) -> list[list[int]]:
    """Integer matrix M with exponent_vector(a(w)) == M @ exponent_vector(w)."""
    M = [[int(r == c) for c in range(a.rank)] for r in range(a.rank)]
    for m in a.moves:
        M = matmul(move_matrix(m, a.rank), M)
    return M


def expand_swaps(a: Automorphism) -> Automorphism:
    """Rewrite every Swap as Inv/RightMult moves (same automorphism)."""
    moves = []
    for m in a.moves:
        if isinstance(m, Swap):
            i, j = m.i, m.j
            # shortest right-multiplication form (found by breadth-first search)
            moves += [
                Inv(i),
                Inv(j),
                RightMult(i, j, -1),
                Inv(i),
                RightMult(j, i, -1),
                RightMult(i, j, 1),
            ]
        else:
            moves.append(m)
    return Automorphism(a.rank, tuple(moves))


def random_automorphism(
    rank: int, n_moves: int, rng: random.Random, max_exp: int = 2
) -> Automorphism:
    moves = []
    for _ in range(n_moves):
        kind = rng.randrange(3)
        i = rng.randrange(rank)
        if kind == 0 or rank < 2:
            moves.append(Inv(i))
            continue
        j = rng.randrange(rank - 1)
        j += j >= i
        if kind == 1:
            e = rng.randint(1, max_exp) * rng.choice((1, -1))
            moves.append(RightMult(i, j, e))
        else:
            moves.append(Swap(i, j))
    return Automorphism(rank, tuple(moves))


# JSON wire format

def move_to_json(m: NielsenMove) -> dict:
    if isinstance(m, Inv):
        return {"op": "inv", "i": m.i}
    if isinstance(m, RightMult):
        return {"op": "mul", "i": m.i, "j": m.j, "e": m.e}
    return {"op": "swap", "i": m.i, "j": m.j}


def move_from_json(d: dict) -> NielsenMove:
    op = d.get("op")
    try:
        if op == "inv":
            return Inv(int(d["i"]))
        if op == "mul":
            return RightMult(int(d["i"]), int(d["j"]), int(d["e"]))
        if op == "swap":
            return Swap(int(d["i"]), int(d["j"]))
    except KeyError as exc:
        raise MalformedInput(f"move {d!r} lacks field {exc}") from None
    raise MalformedInput(f"unknown move op {op!r}")


def automorphism_to_json(a: Automorphism) -> dict:
    return {"rank": a.rank, "moves": [move_to_json(m) for m in a.moves]}


def automorphism_from_json(d: dict) -> Automorphism:
    return Automorphism(int(d["rank"]), tuple(move_from_json(m) for m in d["moves"]))


def check_exponent_action(a: Automorphism, w: Word) -> bool:
    M = abelianized_matrix(a)
    return exponent_vector(apply(a, w), a.rank) == matvec(M, exponent_vector(w, a.rank))

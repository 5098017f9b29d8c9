"""Good presentations: one generator with zero exponent sum in every relator.

The schedule triangularises the exponent matrix.  Relator ``k`` (1-based)
has its sums in generators ``1..n-k`` eliminated by Euclid on successive
pairs, with the leftover gcd pushed into generator ``n-k+1``.  The moves for
relator ``k`` only touch generators ``1..n-k+1``, where every earlier
relator already has zero sums, so earlier zeros survive.
"""
from __future__ import annotations

from dataclasses import dataclass

from .euclid import GrowthTrace, trace_automorphism, zero_all_but_one
from .nielsen import Automorphism, apply, automorphism_to_json, inverse
from .presentation import Presentation, apply_automorphism, exponent_matrix, is_bp
from .word import MalformedInput, Word, cyclic_reduce


class NotBP(MalformedInput):
    """Fewer than two more generators than relators."""


@dataclass(frozen=True)
class GoodPresentation:
    base: Presentation
    t_index: int
    automorphism: Automorphism
    traces: tuple[GrowthTrace, ...]
    # apply(automorphism, r) before cyclic reduction, one per original relator
    relator_images: tuple[Word, ...]
    scheduled: bool = True

    @property
    def t_name(self) -> str:
        return self.base.generator_names[self.t_index]


def zero_columns(p: Presentation) -> list[int]:
    M = exponent_matrix(p)
    return [i for i in range(p.rank) if all(row[i] == 0 for row in M)]


def make_good(p: Presentation, shortcut: bool = True) -> GoodPresentation:
    """Automorphism giving a presentation with a zero exponent-sum column.

    With ``shortcut`` an existing all-zero column is used as is (identity
    automorphism, lowest such column).  Otherwise, or when no column is
    zero, the triangular schedule runs and the designated generator is 0.
    """
    if not is_bp(p):
        raise NotBP(f"{p.rank} generators and {len(p.relators)} relators: need n >= m + 2")
    n, m = p.rank, len(p.relators)
    if shortcut:
        zeros = zero_columns(p)
        if zeros:
            ident = Automorphism.identity(n)
            return GoodPresentation(
                base=p,
                t_index=zeros[0],
                automorphism=ident,
                traces=tuple(GrowthTrace(len(r)) for r in p.relators),
                relator_images=p.relators,
                scheduled=False,
            )
    moves = []
    current = list(p.relators)
    for k in range(1, m + 1):
        # zero X_0..X_{n-k-1} of relator k, residue into n-k
        a, _, _ = zero_all_but_one(current[k - 1], range(n - k + 1), n)
        if a.moves:
            moves.extend(a.moves)
            current = [apply(a, r) for r in current]
    auto = Automorphism(n, tuple(moves))
    traces = []
    images = []
    for r in p.relators:
        img, tr = trace_automorphism(auto, r)
        traces.append(tr)
        images.append(img)
    return GoodPresentation(
        base=apply_automorphism(p, auto),
        t_index=0,
        automorphism=auto,
        traces=tuple(traces),
        relator_images=tuple(images),
    )


def verify_good(g: GoodPresentation, original: Presentation) -> bool:
    if g.automorphism.rank != original.rank or g.base.rank != original.rank:
        return False
    if g.base.generator_names != original.generator_names:
        return False
    if not 0 <= g.t_index < original.rank:
        return False
    replay = apply_automorphism(original, g.automorphism)
    if replay.relators != g.base.relators:
        return False
    return all(row[g.t_index] == 0 for row in exponent_matrix(g.base))


def replay_inverse(g: GoodPresentation) -> list[Word]:
    """Original relators recovered from the exact relator images."""
    inv = inverse(g.automorphism)
    return [apply(inv, w) for w in g.relator_images]


def triangular(g: GoodPresentation) -> bool:
    """X_i(r_k) == 0 for all i <= n - k (1-based), the schedule's zero pattern."""
    n = g.base.rank
    M = exponent_matrix(g.base)
    return all(M[k - 1][i] == 0 for k in range(1, len(M) + 1) for i in range(n - k))


def good_to_json(g: GoodPresentation) -> dict:
    return {
        "format": 1,
        "t_index": g.t_index,
        "t_name": g.t_name,
        "automorphism": automorphism_to_json(g.automorphism),
        "relators": [
            dict(tr.summary(), base_length=len(r), steps=tr.step_count)
            for tr, r in zip(g.traces, g.base.relators)
        ],
    }


def cyclically_equal(a: Word, b: Word) -> bool:
    """Whether two words agree up to conjugation in the free group."""
    a, b = cyclic_reduce(a), cyclic_reduce(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a.codes + a.codes
    n = len(a)
    return any(doubled[s : s + n] == b.codes for s in range(n))

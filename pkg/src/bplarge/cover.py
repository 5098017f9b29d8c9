"""Coset tables and Reidemeister-Schreier rewriting.

The rewriting engine works for any complete transitive coset table; the
cyclic cover of a good presentation is one client and the low-index
enumeration is the other.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .goodpres import GoodPresentation
from .presentation import Presentation
from .word import MalformedInput, Word, concat, exponent_vector, format_word, invert, substitute


class NotGoodPresentation(MalformedInput):
    pass


class IncompleteTable(MalformedInput):
    pass


def col(code: int) -> int:
    """Column of a letter code: 2g for x_g, 2g+1 for x_g^-1."""
    return 2 * (abs(code) - 1) + (code < 0)


class CosetTable:
    """Action of the signed generators on cosets ``0..size-1``.

    Entries are ``None`` while undefined.  Coset 0 is the subgroup.
    """

    __slots__ = ("rank", "rows")

    def __init__(self, rank: int, rows=None):
        self.rank = rank
        self.rows = [list(r) for r in rows] if rows is not None else [[None] * (2 * rank)]

    @property
    def size(self) -> int:
        return len(self.rows)

    def act(self, c: int, code: int):
        return self.rows[c][col(code)]

    def trace(self, c: int, w: Word):
        for code in w.codes:
            c = self.rows[c][col(code)]
            if c is None:
                return None
        return c

    def is_complete(self) -> bool:
        return all(x is not None for row in self.rows for x in row)

    def is_consistent(self) -> bool:
        """Every pair of columns (g, g^-1) are mutually inverse where defined."""
        for c, row in enumerate(self.rows):
            for g in range(self.rank):
                d = row[2 * g]
                if d is not None and self.rows[d][2 * g + 1] != c:
                    return False
                e = row[2 * g + 1]
                if e is not None and self.rows[e][2 * g] != c:
                    return False
        return True

    def is_transitive(self) -> bool:
        seen = {0}
        todo = [0]
        while todo:
            c = todo.pop()
            for d in self.rows[c]:
                if d is not None and d not in seen:
                    seen.add(d)
                    todo.append(d)
        return len(seen) == self.size

    def closes(self, relators) -> bool:
        """Every relator traces a closed loop from every coset."""
        return all(self.trace(c, r) == c for r in relators for c in range(self.size))

    def key(self) -> tuple:
        return tuple(tuple(r) for r in self.rows)

    def flat(self) -> list:
        return [x for row in self.rows for x in row]

    def permutations(self) -> list[list[int]]:
        """Images of the positive generators as permutation lists."""
        return [[row[2 * g] for row in self.rows] for g in range(self.rank)]

    def copy(self) -> "CosetTable":
        return CosetTable(self.rank, self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, CosetTable) and self.rank == other.rank and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.rank, self.key()))

    def __repr__(self) -> str:
        return f"CosetTable(rank={self.rank}, rows={self.rows})"

    @classmethod
    def from_permutations(cls, perms) -> "CosetTable":
        n = len(perms[0]) if perms else 1
        rows = [[None] * (2 * len(perms)) for _ in range(n)]
        for g, p in enumerate(perms):
            for c, d in enumerate(p):
                rows[c][2 * g] = d
                rows[d][2 * g + 1] = c
        return cls(len(perms), rows)


def cyclic_table(rank: int, t: int, k: int) -> CosetTable:
    """t cycles the k cosets, every other generator fixes them."""
    if k < 1:
        raise MalformedInput("k must be positive")
    rows = []
    for j in range(k):
        row = [j] * (2 * rank)
        row[2 * t] = (j + 1) % k
        row[2 * t + 1] = (j - 1) % k
        rows.append(row)
    return CosetTable(rank, rows)


def zk_coset_table(g: GoodPresentation, k: int) -> CosetTable:
    """Cosets of the kernel of G -> Z/k, t -> 1, every other generator -> 0."""
    table = cyclic_table(g.base.rank, g.t_index, k)
    if not table.closes(g.base.relators):
        raise NotGoodPresentation(
            f"a relator has t-exponent not divisible by {k}; the map to Z/{k} is undefined"
        )
    return table


@dataclass(frozen=True)
class SubgroupPresentation:
    generator_labels: tuple[str, ...]
    relators: tuple[Word, ...]
    inclusion: dict = field(hash=False)  # label -> Word in the base generators
    index: int
    base_rank: int
    schreier_edges: tuple[tuple[int, int], ...] = ()  # (coset, generator) per label
    transversal: tuple[Word, ...] = ()
    sources: tuple[tuple[int, int], ...] = ()  # (relator index, coset) per relator

    @property
    def rank(self) -> int:
        return len(self.generator_labels)

    @property
    def deficiency(self) -> int:
        return self.rank - len(self.relators)

    def exponent_matrix(self) -> list[list[int]]:
        return [exponent_vector(r, self.rank) for r in self.relators]

    def to_presentation(self) -> Presentation:
        return Presentation.from_words(self.generator_labels, self.relators)

    def to_text(self) -> str:
        lines = ["generators: " + " ".join(self.generator_labels)]
        lines += ["relator: " + format_word(r, self.generator_labels) for r in self.relators]
        return "\n".join(lines) + "\n"


def schreier_transversal(table: CosetTable, gen_order=None) -> list[Word]:
    """Coset representatives by breadth-first search over positive letters.

    Positive letters suffice because a finite permutation's inverse is one of
    its positive powers; for the Z/k table with t first this gives t^0..t^(k-1).
    """
    if gen_order is None:
        gen_order = range(table.rank)
    reps: list = [None] * table.size
    reps[0] = Word()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g in gen_order:
            d = table.rows[c][2 * g]
            if reps[d] is None:
                reps[d] = concat(reps[c], Word.gen(g))
                queue.append(d)
    if any(r is None for r in reps):
        raise MalformedInput("coset table is not transitive")
    return reps


def reidemeister_schreier(p: Presentation, table: CosetTable, t_index: int | None = None) -> SubgroupPresentation:
    """Presentation of the subgroup (stabiliser of coset 0) described by ``table``."""
    if not table.is_complete():
        raise IncompleteTable("Reidemeister-Schreier needs a complete coset table")
    if table.rank != p.rank:
        raise MalformedInput("table rank differs from presentation rank")
    n, k = p.rank, table.size
    order = list(range(n))
    if t_index is not None:
        order.remove(t_index)
        order.insert(0, t_index)
    reps = schreier_transversal(table, order)
    tree = set()
    for c in range(k):
        for g in range(n):
            d = table.rows[c][2 * g]
            if concat(reps[c], Word.gen(g)) == reps[d]:
                tree.add((c, g))
    edges = [(c, g) for g in range(n) for c in range(k) if (c, g) not in tree]
    t_edges = [e for e in edges if e[1] == t_index]
    if t_index is not None and len(t_edges) == 1:
        edges.remove(t_edges[0])
        edges.insert(0, t_edges[0])
        labels = ["tau"] + [f"y_{g}_{c}" for c, g in edges[1:]]
    else:
        labels = [f"y_{g}_{c}" for c, g in edges]
    number = {e: i + 1 for i, e in enumerate(edges)}
    inclusion = {}
    for lab, (c, g) in zip(labels, edges):
        d = table.rows[c][2 * g]
        inclusion[lab] = concat(concat(reps[c], Word.gen(g)), invert(reps[d]))

    relators = []
    sources = []
    for ri, r in enumerate(p.relators):
        for c in range(k):
            relators.append(rewrite(r, c, table, number))
            sources.append((ri, c))
    return SubgroupPresentation(
        generator_labels=tuple(labels),
        relators=tuple(relators),
        inclusion=inclusion,
        index=k,
        base_rank=n,
        schreier_edges=tuple(edges),
        transversal=tuple(reps),
        sources=tuple(sources),
    )


def rewrite(w: Word, c: int, table: CosetTable, number: dict) -> Word:
    """Rewrite ``rep(c) w rep(c)^-1`` in Schreier generators (w must close at c)."""
    out = []
    for code in w.codes:
        g = abs(code) - 1
        if code > 0:
            s = number.get((c, g))
            if s is not None:
                out.append(s)
            c = table.rows[c][2 * g]
        else:
            c = table.rows[c][2 * g + 1]
            s = number.get((c, g))
            if s is not None:
                out.append(-s)
    return Word(out)


def lift(sub: SubgroupPresentation, w: Word) -> Word:
    """Substitute inclusion words into a word over the subgroup labels."""
    return substitute(w, [sub.inclusion[lab] for lab in sub.generator_labels])


def relators_lift_correctly(sub: SubgroupPresentation, p: Presentation) -> bool:
    """Each rewritten relator lifts to rep(c) r rep(c)^-1 exactly."""
    for rel, (ri, c) in zip(sub.relators, sub.sources):
        rep = sub.transversal[c]
        expect = concat(concat(rep, p.relators[ri]), invert(rep))
        if lift(sub, rel) != expect:
            return False
    return True


def expected_counts(n: int, m: int, k: int) -> tuple[int, int]:
    return (n - 1) * k + 1, m * k


def verify_subgroup(sub: SubgroupPresentation, g: GoodPresentation, k: int) -> bool:
    n, m = g.base.rank, len(g.base.relators)
    t = g.t_index
    for w in sub.inclusion.values():
        if exponent_vector(w, n)[t] % k:
            return False
    if set(sub.inclusion) != set(sub.generator_labels):
        return False
    if (sub.rank, len(sub.relators)) != expected_counts(n, m, k):
        return False
    if sub.deficiency != (n - 1 - m) * k + 1:
        return False
    if n >= m + 2 and sub.deficiency < k + 1:
        return False
    return True


def cover(g: GoodPresentation, k: int) -> SubgroupPresentation:
    return reidemeister_schreier(g.base, zk_coset_table(g, k), t_index=g.t_index)


def subgroup_to_json(sub: SubgroupPresentation, names) -> dict:
    return {
        "index": sub.index,
        "generators": list(sub.generator_labels),
        "relators": [format_word(r, sub.generator_labels) for r in sub.relators],
        "inclusion": {lab: format_word(sub.inclusion[lab], names) for lab in sub.generator_labels},
    }

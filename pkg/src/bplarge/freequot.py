"""Certified surjections of a cyclic-cover subgroup onto the free group F(u, v).

The verifier is the contract: an assignment of words in u, v to the subgroup
generators is a homomorphism when every relator maps to the empty word, and
it is onto when some generator maps to ``u`` and some generator maps to ``v``.
The search only proposes candidates; everything it returns is re-verified.
"""
from __future__ import annotations

import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cover import (
    SubgroupPresentation,
    cover,
    relators_lift_correctly,
    subgroup_to_json,
    verify_subgroup,
)
from .goodpres import GoodPresentation, NotBP, make_good, verify_good
from .lowindex import abelianization
from .nielsen import Automorphism, automorphism_from_json, automorphism_to_json
from .presentation import Presentation, apply_automorphism, is_bp, parse, serialize
from .word import MalformedInput, Word, format_word, parse_word, substitute

TARGET_NAMES = ("u", "v")
U = Word.gen(0)
V = Word.gen(1)
EMPTY = Word()

DEFAULT_BUDGET = 200_000


class UnassignedLabel(MalformedInput):
    pass


class NotFound(LookupError):
    """No certificate within the search limits.  Not a proof of absence."""

    def __init__(self, message: str, stats: list[dict]):
        super().__init__(message)
        self.stats = stats


def verify_certificate(sub: SubgroupPresentation, assignment: dict) -> bool:
    missing = [lab for lab in sub.generator_labels if lab not in assignment]
    if missing:
        raise UnassignedLabel(f"no value assigned to {missing[0]!r}")
    values = list(assignment.values())
    if U not in values or V not in values:
        return False
    images = [assignment[lab] for lab in sub.generator_labels]
    return all(not substitute(r, images) for r in sub.relators)


# search


@dataclass
class _Budget:
    limit: int
    used: int = 0

    def take(self) -> bool:
        if self.used >= self.limit:
            return False
        self.used += 1
        return True


def _all_relators_die(sub, values) -> bool:
    images = [values.get(lab, EMPTY) for lab in sub.generator_labels]
    return all(not substitute(r, images) for r in sub.relators)


def _kill_all_but_two(sub, budget, zero_cols):
    # exponent sums of survivors must vanish in every relator; swapping
    # u and v is an automorphism of F(u, v), so unordered pairs suffice
    cand = [lab for lab, ok in zip(sub.generator_labels, zero_cols) if ok]
    letters_of = [set(abs(c) for c in r.codes) for r in sub.relators]
    number = {lab: i + 1 for i, lab in enumerate(sub.generator_labels)}
    for p, q in itertools.combinations(cand, 2):
        if not budget.take():
            return None
        keep = {number[p], number[q]}
        # p -> u, q -> v is a relabelling, so the image is the reduced survivor subword
        if all(
            not (used & keep) or not Word(c for c in r.codes if abs(c) in keep)
            for r, used in zip(sub.relators, letters_of)
        ):
            return {p: U, q: V}
    return None


_Y = re.compile(r"y_(\d+)_(\d+)$")


def _grid(sub):
    rows: dict[int, list[str]] = {}
    cols: dict[int, list[str]] = {}
    for lab in sub.generator_labels:
        m = _Y.match(lab)
        if m:
            g, c = int(m.group(1)), int(m.group(2))
            rows.setdefault(g, []).append(lab)
            cols.setdefault(c, []).append(lab)
    return [rows[g] for g in sorted(rows)], [cols[c] for c in sorted(cols)]


def _structured(sub, budget):
    """Heuristic patterns on the y(i, j) grid; tau is always killed."""
    rows, cols = _grid(sub)
    patterns = []
    for group in rows + cols:
        if len(group) >= 2:
            patterns.append({lab: (U if n % 2 == 0 else V) for n, lab in enumerate(group)})
    for family in (rows, cols):
        for a, b in itertools.combinations(family, 2):
            pat = {lab: U for lab in a}
            pat.update({lab: V for lab in b})
            patterns.append(pat)
    for pat in patterns:
        if not budget.take():
            return None
        if _all_relators_die(sub, pat):
            return pat
    return None


def _backtrack(sub, budget):
    labels = list(sub.generator_labels)
    number = {lab: i for i, lab in enumerate(labels)}
    # check each relator as soon as its last label gets a value
    last = {}
    for r in sub.relators:
        hi = max(abs(c) - 1 for c in r.codes)
        last.setdefault(hi, []).append(r)
    choice: list[Word] = []
    values = (EMPTY, U, V)

    def rec(depth, seen_u, seen_v):
        if depth == len(labels):
            return seen_u and seen_v
        remaining = len(labels) - depth
        for val in values:
            # u before v: the first nonempty value is u (u <-> v symmetry)
            if val == V and not seen_u:
                continue
            su, sv = seen_u or val == U, seen_v or val == V
            if (not su) + (not sv) > remaining - 1:
                continue
            if not budget.take():
                raise _Exhausted
            choice.append(val)
            ok = all(not substitute(r, choice) for r in last.get(depth, ()))
            if ok and rec(depth + 1, su, sv):
                return True
            choice.pop()
        return False

    try:
        if rec(0, False, False):
            return {lab: choice[number[lab]] for lab in labels}
    except _Exhausted:
        pass
    return None


class _Exhausted(Exception):
    pass


def search_certificate(sub: SubgroupPresentation, budget: int = DEFAULT_BUDGET):
    """Assignment to {empty, u, v} passing ``verify_certificate``, or None."""
    found, _ = _search(sub, budget)
    return found


def _search(sub, budget):
    b = _Budget(budget)
    M = sub.exponent_matrix()
    zero_cols = [all(row[i] == 0 for row in M) for i in range(sub.rank)]
    phases = (
        ("pairs", lambda: _kill_all_but_two(sub, b, zero_cols)),
        ("structured", lambda: _structured(sub, b)),
        ("backtrack", lambda: _backtrack(sub, b)),
    )
    for name, run in phases:
        found = run()
        if found is not None:
            full = {lab: found.get(lab, EMPTY) for lab in sub.generator_labels}
            if verify_certificate(sub, full):
                return full, {"phase": name, "nodes": b.used}
        if b.used >= b.limit:
            break
    return None, {"phase": None, "nodes": b.used}


# certificates


@dataclass
class LargenessCertificate:
    original: Presentation
    automorphism: Automorphism
    t_index: int
    k: int
    subgroup: SubgroupPresentation
    assignment: dict
    stats: list = field(default_factory=list)

    def to_json(self) -> dict:
        names = self.original.generator_names
        return {
            "format": 1,
            "kind": "largeness-certificate",
            "original": serialize(self.original),
            "automorphism": automorphism_to_json(self.automorphism),
            "t_index": self.t_index,
            "t_name": names[self.t_index],
            "k": self.k,
            "subgroup": subgroup_to_json(self.subgroup, names),
            "target": list(TARGET_NAMES),
            "assignment": {
                lab: format_word(w, TARGET_NAMES) for lab, w in self.assignment.items()
            },
            "search": self.stats,
        }


def _good_from(p: Presentation, a: Automorphism, t: int) -> GoodPresentation:
    base = apply_automorphism(p, a)
    return GoodPresentation(base, t, a, (), ())


def audit(cert: LargenessCertificate) -> bool:
    """Replay from the original: automorphism, good form, cover, assignment."""
    p = cert.original
    if not is_bp(p) or cert.k < 1:
        return False
    good = _good_from(p, cert.automorphism, cert.t_index)
    if not verify_good(good, p):
        return False
    sub = cover(good, cert.k)
    if sub.generator_labels != cert.subgroup.generator_labels:
        return False
    if sub.relators != cert.subgroup.relators:
        return False
    if any(sub.inclusion[lab] != cert.subgroup.inclusion.get(lab) for lab in sub.generator_labels):
        return False
    if not verify_subgroup(sub, good, cert.k) or not relators_lift_correctly(sub, good.base):
        return False
    try:
        return verify_certificate(sub, cert.assignment)
    except UnassignedLabel:
        return False


def certificate_from_json(d: dict) -> LargenessCertificate:
    if d.get("format") != 1:
        raise MalformedInput(f"unsupported certificate format {d.get('format')!r}")
    p = parse(d["original"])
    a = automorphism_from_json(d["automorphism"])
    t = int(d["t_index"])
    k = int(d["k"])
    s = d["subgroup"]
    labels = tuple(s["generators"])
    rels = tuple(parse_word(text, labels) for text in s["relators"])
    inclusion = {lab: parse_word(text, p.generator_names) for lab, text in s["inclusion"].items()}
    sub = SubgroupPresentation(labels, rels, inclusion, int(s["index"]), p.rank)
    assignment = {lab: parse_word(text, TARGET_NAMES) for lab, text in d["assignment"].items()}
    return LargenessCertificate(p, a, t, k, sub, assignment, d.get("search", []))


def _try_k(args):
    good, k, budget = args
    sub = cover(good, k)
    if not verify_subgroup(sub, good, k):
        raise AssertionError(f"cover bookkeeping failed at k={k}")
    found, info = _search(sub, budget)
    return k, sub, found, info


def _sweep(good, ks, budget, jobs):
    tasks = [(good, k, budget) for k in ks]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_try_k, tasks))
        # smallest successful k wins, as in the sequential sweep
        stats = []
        for k, sub, found, info in results:
            stats.append(dict(info, k=k))
            if found is not None:
                return k, sub, found, stats
        return None, None, None, stats
    stats = []
    for task in tasks:
        k, sub, found, info = _try_k(task)
        stats.append(dict(info, k=k))
        if found is not None:
            return k, sub, found, stats
    return None, None, None, stats


def certify_large(
    p: Presentation, k_max: int | None = None, budget: int = DEFAULT_BUDGET, jobs: int = 1
) -> LargenessCertificate:
    """First verified certificate over k = 1..k_max; raises NotFound otherwise.

    The good presentation from ``make_good`` is tried first; if its sweep
    fails and it came from an existing zero column, the scheduled
    elimination is swept as well.
    """
    if not is_bp(p):
        raise NotBP(f"{p.rank} generators and {len(p.relators)} relators: need n >= m + 2")
    candidates = [make_good(p)]
    if not candidates[0].scheduled:
        candidates.append(make_good(p, shortcut=False))
    all_stats = []
    for good in candidates:
        kmax = k_max if k_max is not None else good.base.max_relator_length() + 1
        k, sub, found, stats = _sweep(good, range(1, kmax + 1), budget, jobs)
        all_stats += [dict(s, t_index=good.t_index, scheduled=good.scheduled) for s in stats]
        if found is None:
            continue
        cert = LargenessCertificate(p, good.automorphism, good.t_index, k, sub, found, all_stats)
        if not audit(cert):
            raise AssertionError("certificate failed its own replay")
        rank, _ = abelianization(sub)
        if rank < 2:
            raise AssertionError("verified certificate on a subgroup of abelian rank < 2")
        return cert
    raise NotFound("no certificate found within the k range and node budget", all_stats)

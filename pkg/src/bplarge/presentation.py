"""Finite presentations: text format, exponent matrices, the deficiency test."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .nielsen import Automorphism, apply
from .word import (
    MalformedInput,
    Word,
    WordSyntaxError,
    cyclic_reduce,
    exponent_vector,
    format_word,
    parse_word,
)

_NAME = re.compile(r"[A-Za-z0-9_]+$")


class ParseError(WordSyntaxError):
    pass


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generator_names", tuple(self.generator_names))
        object.__setattr__(self, "relators", tuple(self.relators))
        names = self.generator_names
        if len(set(names)) != len(names):
            raise MalformedInput("duplicate generator names")
        for name in names:
            if not _NAME.match(name):
                raise MalformedInput(f"bad generator name {name!r}")
        for r in self.relators:
            if not r:
                raise MalformedInput("empty relator")
            if r.max_index() >= self.rank:
                raise MalformedInput("relator uses an undeclared generator")
            if cyclic_reduce(r) != r:
                raise MalformedInput("relators must be cyclically reduced")

    @classmethod
    def from_words(cls, names, relators) -> "Presentation":
        """Build from arbitrary words, cyclically reducing and dropping empty ones."""
        rels = [cyclic_reduce(r) for r in relators]
        return cls(tuple(names), tuple(r for r in rels if r))

    @property
    def rank(self) -> int:
        return len(self.generator_names)

    @property
    def deficiency(self) -> int:
        return self.rank - len(self.relators)

    def max_relator_length(self) -> int:
        return max((len(r) for r in self.relators), default=0)

    def __str__(self) -> str:
        return serialize(self)


def parse(text: str) -> Presentation:
    names: list[str] | None = None
    index: dict[str, int] = {}
    relators: list[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        col = line.index(":") + 2 if sep else 1
        if not sep or key not in ("generators", "relator"):
            raise ParseError(f"expected 'generators:' or 'relator:', got {raw.strip()!r}", lineno, 1)
        if key == "generators":
            if names is not None:
                raise ParseError("generators declared twice", lineno, 1)
            names = []
            for m in re.finditer(r"\S+", rest):
                name = m.group(0)
                c = col + m.start()
                if not _NAME.match(name):
                    raise ParseError(f"bad generator name {name!r}", lineno, c)
                if name in index:
                    raise ParseError(f"duplicate generator name {name!r}", lineno, c)
                index[name] = len(names)
                names.append(name)
            continue
        if names is None:
            raise ParseError("relator before generators line", lineno, 1)
        try:
            w = parse_word(rest, index, line=lineno, col0=col)
        except WordSyntaxError as exc:
            raise ParseError(str(exc).split(": ", 1)[1], exc.line, exc.column) from None
        w = cyclic_reduce(w)
        if not w:
            raise ParseError("relator reduces to the empty word", lineno, col + len(rest) - len(rest.lstrip()))
        relators.append(w)
    if names is None:
        raise ParseError("missing 'generators:' line", 1, 1)
    return Presentation(tuple(names), tuple(relators))


def serialize(p: Presentation) -> str:
    lines = ["generators: " + " ".join(p.generator_names)]
    lines += ["relator: " + format_word(r, p.generator_names) for r in p.relators]
    return "\n".join(lines) + "\n"


def exponent_matrix(p: Presentation) -> list[list[int]]:
    return [exponent_vector(r, p.rank) for r in p.relators]


def is_bp(p: Presentation) -> bool:
    """At least two more generators than relators."""
    return p.rank >= len(p.relators) + 2


def apply_automorphism(p: Presentation, a: Automorphism) -> Presentation:
    if a.rank != p.rank:
        raise MalformedInput(f"automorphism of rank {a.rank} on a rank {p.rank} presentation")
    return Presentation(p.generator_names, tuple(cyclic_reduce(apply(a, r)) for r in p.relators))


def load(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())

"""Freely reduced words over a finite ranked alphabet.

A letter is stored as a nonzero signed integer: generator ``i`` (0-based)
is ``i + 1`` and its inverse is ``-(i + 1)``.  The public ``Letter`` tuple
is the readable form of the same data.
"""
from __future__ import annotations

import random
import re
from typing import Iterable, Mapping, NamedTuple, Sequence


class MalformedInput(ValueError):
    """A word, image map or token string that does not fit its context."""


class WordSyntaxError(MalformedInput):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class Letter(NamedTuple):
    gen: int
    sign: int

    def code(self) -> int:
        if self.sign not in (1, -1):
            raise MalformedInput(f"letter sign must be +1 or -1, got {self.sign}")
        if self.gen < 0:
            raise MalformedInput(f"negative generator index {self.gen}")
        return self.sign * (self.gen + 1)


def _code(x) -> int:
    if isinstance(x, Letter):
        return x.code()
    if isinstance(x, tuple):
        return Letter(*x).code()
    if x == 0:
        raise MalformedInput("letter code 0 is not a letter")
    return int(x)


def _reduce_codes(codes: Iterable[int]) -> list[int]:
    out: list[int] = []
    for c in codes:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return out


class Word:
    """An immutable freely reduced word.

    ``Word(seq)`` accepts letter codes, ``Letter`` values or ``(gen, sign)``
    pairs and always reduces.
    """

    __slots__ = ("_codes",)

    def __init__(self, letters: Iterable = ()):
        self._codes = tuple(_reduce_codes(_code(x) for x in letters))

    @classmethod
    def _trusted(cls, codes) -> "Word":
        w = cls.__new__(cls)
        w._codes = tuple(codes)
        return w

    @classmethod
    def gen(cls, i: int, power: int = 1) -> "Word":
        c = i + 1 if power >= 0 else -(i + 1)
        return cls._trusted((c,) * abs(power))

    @property
    def codes(self) -> tuple[int, ...]:
        return self._codes

    @property
    def letters(self) -> tuple[Letter, ...]:
        return tuple(Letter(abs(c) - 1, 1 if c > 0 else -1) for c in self._codes)

    def max_index(self) -> int:
        """Largest generator index used, or -1 for the empty word."""
        return max((abs(c) for c in self._codes), default=0) - 1

    def __len__(self) -> int:
        return len(self._codes)

    def __iter__(self):
        return iter(self._codes)

    def __bool__(self) -> bool:
        return bool(self._codes)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self._codes == other._codes
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._codes)

    def __lt__(self, other: "Word") -> bool:
        return (len(self), self._codes) < (len(other), other._codes)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else invert(self)
        return Word(base._codes * abs(n))

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


EMPTY = Word()


def reduce(letters: Iterable) -> Word:
    return Word(letters)


def concat(a: Word, b: Word) -> Word:
    # only the seam can cancel
    ac, bc = a.codes, b.codes
    i = 0
    n = min(len(ac), len(bc))
    while i < n and ac[len(ac) - 1 - i] == -bc[i]:
        i += 1
    return Word._trusted(ac[: len(ac) - i] + bc[i:])


def invert(w: Word) -> Word:
    return Word._trusted(-c for c in reversed(w.codes))


def cyclic_reduce(w: Word) -> Word:
    c = w.codes
    lo, hi = 0, len(c) - 1
    while lo < hi and c[lo] == -c[hi]:
        lo += 1
        hi -= 1
    return Word._trusted(c[lo : hi + 1])


def exponent_vector(w: Word, rank: int) -> list[int]:
    vec = [0] * rank
    for c in w.codes:
        i = abs(c) - 1
        if i >= rank:
            raise MalformedInput(f"generator index {i} out of rank {rank}")
        vec[i] += 1 if c > 0 else -1
    return vec


def occurrences(w: Word, g: int) -> tuple[int, int]:
    """Counts ``(L_g, L_{g^-1})`` of the letters ``g`` and ``g^-1`` in ``w``."""
    pos = w.codes.count(g + 1)
    neg = w.codes.count(-(g + 1))
    return pos, neg


def substitute(w: Word, images: Mapping[int, Word] | Sequence[Word]) -> Word:
    """Replace each generator ``i`` by ``images[i]`` and freely reduce."""
    table: dict[int, tuple[int, ...]] = {}
    used = {abs(c) for c in w.codes}
    for code in used:
        i = code - 1
        try:
            img = images[i]
        except (KeyError, IndexError):
            raise MalformedInput(f"no image given for generator {i}") from None
        table[code] = img.codes
        table[-code] = tuple(-c for c in reversed(img.codes))
    out: list[int] = []
    pop, extend = out.pop, out.extend
    for c in w.codes:
        seq = table[c]
        # images are reduced: cancellation can only run across the seam
        k, n = 0, len(seq)
        while k < n and out and out[-1] == -seq[k]:
            pop()
            k += 1
        extend(seq[k:] if k else seq)
    return Word._trusted(out)


def random_reduced_word(rank: int, length: int, seed=None) -> Word:
    """Uniform random reduced word of exact ``length`` (non-backtracking walk).

    ``seed`` may be anything ``random.Random`` accepts, or a ``Random``.
    """
    if rank < 1 or length < 0:
        raise MalformedInput("need rank >= 1 and length >= 0")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    letters = [c for i in range(1, rank + 1) for c in (i, -i)]
    if length == 0:
        return EMPTY
    out = [rng.choice(letters)]
    for _ in range(length - 1):
        # 2n-1 choices: draw from the list with the cancelling letter removed
        k = rng.randrange(2 * rank - 1)
        c = letters[k]
        if c == -out[-1]:
            c = letters[-1]
        out.append(c)
    return Word._trusted(out)


# token syntax: "a b^-1 c^2"

_TOKEN = re.compile(r"([A-Za-z0-9_]+)(?:\^([+-]?\d+))?$")


def parse_word(
    text: str, names: Sequence[str] | Mapping[str, int], line: int = 1, col0: int = 1
) -> Word:
    """Parse whitespace-separated ``name^exp`` tokens into a reduced word."""
    index = names if isinstance(names, Mapping) else {n: i for i, n in enumerate(names)}
    codes: list[int] = []
    for m in re.finditer(r"\S+", text):
        tok = m.group(0)
        col = col0 + m.start()
        tm = _TOKEN.match(tok)
        if tm is None:
            name = tok.split("^", 1)[0]
            if "^" in tok and re.fullmatch(r"[A-Za-z0-9_]+", name):
                raise WordSyntaxError(f"malformed exponent in {tok!r}", line, col)
            raise WordSyntaxError(f"malformed token {tok!r}", line, col)
        name, exp = tm.group(1), tm.group(2)
        if name not in index:
            raise WordSyntaxError(f"unknown generator {name!r}", line, col)
        e = int(exp) if exp is not None else 1
        c = index[name] + 1
        codes.extend([c if e > 0 else -c] * abs(e))
    return Word(codes)


def format_word(w: Word, names: Sequence[str] | None = None) -> str:
    """Inverse of ``parse_word``: syllables as ``name`` or ``name^exp``."""
    if names is None:
        names = [f"x{i}" for i in range(w.max_index() + 1)]
    parts = []
    codes = w.codes
    i = 0
    while i < len(codes):
        c = codes[i]
        j = i
        while j < len(codes) and codes[j] == c:
            j += 1
        e = (j - i) * (1 if c > 0 else -1)
        name = names[abs(c) - 1]
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(parts)

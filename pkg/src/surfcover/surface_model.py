"""Surface groups with marked points: letters, words, abelianization.

The fundamental group of a genus ``g`` surface with ``n`` marked points is
generated by ``a_1, b_1, ..., a_g, b_g, z_1, ..., z_n`` subject to the single
relation ``[a_1,b_1]...[a_g,b_g] z_1...z_n = 1`` where ``[x,y] = x y x^-1 y^-1``.

Words are stored as explicit tuples of letters and serialized as whitespace
separated tokens, uppercase meaning inverse::

    >>> w = Word.parse("a1 b1 A1 B1")
    >>> w == surface_relator(SurfaceType(1, 0))
    True
    >>> base_class(w, SurfaceType(1, 0))
    (0, 0)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce as _fold
from typing import Iterable, NamedTuple, Sequence

KINDS = ("a", "b", "z")
_TOKEN = re.compile(r"^([abzABZ])([1-9][0-9]*)$")


@dataclass(frozen=True)
class SurfaceType:
    genus: int
    marked: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.marked < 0:
            raise ValueError(f"invalid surface type {self.genus}, {self.marked}")

    @property
    def generators(self) -> tuple["Letter", ...]:
        """Positive letters in the fixed order a1, b1, ..., ag, bg, z1, ..., zn."""
        gens = []
        for i in range(1, self.genus + 1):
            gens.append(Letter("a", i, 1))
            gens.append(Letter("b", i, 1))
        gens.extend(Letter("z", j, 1) for j in range(1, self.marked + 1))
        return tuple(gens)

    def generator_index(self, letter: "Letter") -> int:
        """Position of ``letter``'s generator in :attr:`generators`."""
        self.check_letter(letter)
        if letter.kind == "a":
            return 2 * (letter.index - 1)
        if letter.kind == "b":
            return 2 * (letter.index - 1) + 1
        return 2 * self.genus + letter.index - 1

    def check_letter(self, letter: "Letter") -> None:
        bound = self.marked if letter.kind == "z" else self.genus
        if not 1 <= letter.index <= bound:
            raise ValueError(f"letter {letter} out of range for {self}")

    def __str__(self):
        return f"Sigma_{self.genus},{self.marked}"


class Letter(NamedTuple):
    kind: str
    index: int
    sign: int = 1

    def inverse(self) -> "Letter":
        return Letter(self.kind, self.index, -self.sign)

    @property
    def positive(self) -> "Letter":
        return Letter(self.kind, self.index, 1)

    def __str__(self):
        k = self.kind if self.sign > 0 else self.kind.upper()
        return f"{k}{self.index}"

    @classmethod
    def parse(cls, token: str) -> "Letter":
        m = _TOKEN.match(token)
        if m is None:
            raise ValueError(f"bad letter token {token!r}")
        k, idx = m.groups()
        return cls(k.lower(), int(idx), 1 if k.islower() else -1)


class Word:
    """Finite sequence of letters; immutable and hashable.

    Multiplication concatenates *and* freely reduces, so products of reduced
    words stay reduced.  The raw constructor never reduces.
    """

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = tuple(letters)
        self._hash = None

    @classmethod
    def parse(cls, text: str) -> "Word":
        return cls(Letter.parse(t) for t in text.split())

    @classmethod
    def gen(cls, kind: str, index: int, power: int = 1) -> "Word":
        x = Letter(kind, index, 1 if power > 0 else -1)
        return cls([x] * abs(power))

    def __str__(self):
        return " ".join(map(str, self.letters))

    def __repr__(self):
        return f"Word({str(self)!r})"

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return reduce(Word(self.letters + other.letters))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return reduce(Word(self.letters * k))

    def inverse(self) -> "Word":
        return Word(x.inverse() for x in reversed(self.letters))

    def is_reduced(self) -> bool:
        return all(x != y.inverse() for x, y in zip(self.letters, self.letters[1:]))

    def max_index(self) -> dict:
        out = {}
        for x in self.letters:
            out[x.kind] = max(out.get(x.kind, 0), x.index)
        return out


def reduce(w: Word) -> Word:
    """Free reduction: cancel adjacent inverse pairs until none remain."""
    out: list[Letter] = []
    for x in w.letters:
        if out and out[-1] == x.inverse():
            out.pop()
        else:
            out.append(x)
    return Word(out)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(t, c)`` with ``w = t c t^-1`` freely and ``c`` cyclically reduced."""
    letters = reduce(w).letters
    k = 0
    while len(letters) - 2 * k >= 2 and letters[k] == letters[-1 - k].inverse():
        k += 1
    return Word(letters[:k]), Word(letters[k:len(letters) - k])


def is_conjugate_free(u: Word, v: Word) -> bool:
    """Conjugacy in the free group: cyclic reductions are rotations of each other."""
    _, cu = cyclic_reduce(u)
    _, cv = cyclic_reduce(v)
    if len(cu) != len(cv):
        return False
    if not cu:
        return True
    doubled = cu.letters + cu.letters
    n = len(cu)
    return any(doubled[i:i + n] == cv.letters for i in range(n))


def commutator(x: Word, y: Word) -> Word:
    return x * y * x.inverse() * y.inverse()


def surface_relator(st: SurfaceType) -> Word:
    """``[a_1,b_1]...[a_g,b_g] z_1...z_n``, freely reduced."""
    parts = [commutator(Word.gen("a", i), Word.gen("b", i)) for i in range(1, st.genus + 1)]
    parts.extend(Word.gen("z", j) for j in range(1, st.marked + 1))
    return _fold(lambda u, v: u * v, parts, Word())


def check_word(w: Word, st: SurfaceType) -> None:
    for x in w:
        st.check_letter(x)


def base_class(w: Word, st: SurfaceType) -> tuple[int, ...]:
    """Image in H_1(closed surface; Z) in the basis ([a_1],[b_1],...,[a_g],[b_g]).

    z letters bound disks around marked points and contribute nothing.
    """
    v = [0] * (2 * st.genus)
    for x in w:
        st.check_letter(x)
        if x.kind == "z":
            continue
        v[st.generator_index(x)] += x.sign
    return tuple(v)


def base_omega(u: Sequence[int], v: Sequence[int]) -> int:
    """Intersection form on H_1 of the base with omega([a_i],[b_i]) = +1."""
    if len(u) != len(v) or len(u) % 2:
        raise ValueError("classes must have the same even length")
    return sum(u[i] * v[i + 1] - u[i + 1] * v[i] for i in range(0, len(u), 2))


def is_primitive(c: Sequence[int]) -> bool:
    """True iff the entries have gcd 1 (the zero vector is not primitive)."""
    return math.gcd(*c) == 1 if len(c) else False

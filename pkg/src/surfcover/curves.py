"""Simple closed curves as words, produced by mapping classes acting on seeds.

Every automorphism used here fixes the surface relator exactly and has an
explicit inverse, so it is induced by an orientation-preserving homeomorphism
(Dehn-Nielsen-Baer).  Images of simple closed curves are therefore simple
closed curves of the same topological type; simplicity is never tested.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .surface_model import (
    Letter,
    SurfaceType,
    Word,
    base_class,
    base_omega,
    commutator,
    cyclic_reduce,
    is_conjugate_free,
    is_primitive,
    reduce,
    surface_relator,
)

DEFAULT_WALK = 8


@dataclass(frozen=True)
class TopType:
    """Topological type tag: ``nonseparating``, ``separating`` (with genus h) or ``pants_boundary``."""

    tag: str
    genus: int = 0
    label: str = ""

    def __post_init__(self):
        if self.tag not in ("nonseparating", "separating", "pants_boundary"):
            raise ValueError(f"unknown topological type {self.tag!r}")
        if self.tag == "separating" and self.genus < 1:
            raise ValueError("separating types need genus h >= 1")

    def __str__(self):
        if self.tag == "separating":
            return f"separating{self.genus}"
        if self.tag == "pants_boundary":
            return f"pants_boundary({self.label})"
        return self.tag

    @classmethod
    def parse(cls, text: str) -> "TopType":
        if text == "nonseparating":
            return cls("nonseparating")
        if text.startswith("separating"):
            return cls("separating", int(text[len("separating"):] or 1))
        raise ValueError(f"unsupported curve type {text!r}")


NONSEP = TopType("nonseparating")
SEP1 = TopType("separating", 1)


@dataclass(frozen=True)
class SccWord:
    word: Word
    ttype: TopType
    provenance: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"word": str(self.word), "type": str(self.ttype), "provenance": list(self.provenance)}


@dataclass(frozen=True)
class TwistAutomorphism:
    """Automorphism of pi_1 given by generator images.

    ``curve`` is the class of the twist curve in H_1 of the base; the induced
    map on H_1 must be ``c -> c + power * omega(c, curve) * curve``.
    """

    name: str
    images: Mapping[Letter, Word]
    curve: tuple[int, ...]
    power: int = 1
    st: SurfaceType = field(default=SurfaceType(1, 0))

    def image_of_letter(self, x: Letter) -> Word:
        w = self.images.get(x.positive, Word([x.positive]))
        return w if x.sign > 0 else w.inverse()

    def __call__(self, w: Word) -> Word:
        out: list[Letter] = []
        for x in w:
            for y in self.image_of_letter(x):
                if out and out[-1] == y.inverse():
                    out.pop()
                else:
                    out.append(y)
        return Word(out)

    def then(self, other: "TwistAutomorphism", name: str | None = None) -> "TwistAutomorphism":
        """Composite ``other o self`` (apply self first)."""
        images = {x: other(self.image_of_letter(x)) for x in self.st.generators}
        return TwistAutomorphism(name or f"{other.name}*{self.name}", images, (), 0, self.st)

    def homology_matrix(self) -> list[list[int]]:
        """Columns are base classes of the images of a_1, b_1, ..., a_g, b_g."""
        cols = [base_class(self.image_of_letter(x), self.st) for x in self.st.generators if x.kind != "z"]
        return [list(r) for r in zip(*cols)] if cols else []

    def check(self) -> None:
        """Raise if the relator is not preserved up to conjugacy or the H_1 action is wrong."""
        R = surface_relator(self.st)
        if not is_conjugate_free(self(R), R):
            raise ValueError(f"{self.name} does not send the relator to a conjugate of itself")
        if not self.curve:
            return
        for x in self.st.generators:
            if x.kind == "z":
                continue
            c = base_class(Word([x]), self.st)
            want = tuple(ci + self.power * base_omega(c, self.curve) * ti for ci, ti in zip(c, self.curve))
            if base_class(self.image_of_letter(x), self.st) != want:
                raise ValueError(f"{self.name} does not act on H_1 as the expected transvection")


def _gen(kind: str, i: int, power: int = 1) -> Word:
    return Word.gen(kind, i, power)


def _unit(st: SurfaceType, kind: str, i: int) -> list[int]:
    v = [0] * (2 * st.genus)
    v[2 * (i - 1) + (0 if kind == "a" else 1)] = 1
    return v


def _conjugated(images: dict[Letter, Word], t: Word) -> dict[Letter, Word]:
    return {x: t * w * t.inverse() for x, w in images.items()}


def _twists(st: SurfaceType) -> list[tuple[TwistAutomorphism, TwistAutomorphism]]:
    """(twist, inverse) pairs about a_i, b_i and the chain curves between handles."""
    out = []
    for i in range(1, st.genus + 1):
        a, b = _gen("a", i), _gen("b", i)
        ca, cb = tuple(_unit(st, "a", i)), tuple(_unit(st, "b", i))
        Ta = TwistAutomorphism(f"T_a{i}", {Letter("b", i): b * a.inverse()}, ca, 1, st)
        Ta_inv = TwistAutomorphism(f"T_a{i}^-1", {Letter("b", i): b * a}, ca, -1, st)
        Tb = TwistAutomorphism(f"T_b{i}", {Letter("a", i): a * b}, cb, 1, st)
        Tb_inv = TwistAutomorphism(f"T_b{i}^-1", {Letter("a", i): a * b.inverse()}, cb, -1, st)
        out += [(Ta, Ta_inv), (Tb, Tb_inv)]
    for i in range(1, st.genus):
        # curve of class a_i + a_{i+1}, disjoint from a_i and a_{i+1}, meeting b_i and b_{i+1}
        a1, b1, a2, b2 = _gen("a", i), _gen("b", i), _gen("a", i + 1), _gen("b", i + 1)
        fwd = {Letter("b", i): a1.inverse() * a2.inverse() * b1,
               Letter("b", i + 1): a2.inverse() * a1.inverse() * b2}
        bwd = {Letter("b", i): a2 * a1 * b1,
               Letter("b", i + 1): a1 * a2 * b2}
        # the raw maps send [a_i,b_i][a_{i+1},b_{i+1}] to its conjugate by t^-1;
        # conjugating the handle generators by t^-1 (resp. t) fixes it exactly
        t = (a1 * a2).inverse()
        handle = [Letter("a", i), Letter("b", i), Letter("a", i + 1), Letter("b", i + 1)]
        fwd_full = {x: fwd.get(x, Word([x])) for x in handle}
        bwd_full = {x: bwd.get(x, Word([x])) for x in handle}
        curve = tuple(p + q for p, q in zip(_unit(st, "a", i), _unit(st, "a", i + 1)))
        Tc = TwistAutomorphism(f"T_c{i}", _conjugated(fwd_full, t.inverse()), curve, 1, st)
        Tc_inv = TwistAutomorphism(f"T_c{i}^-1", _conjugated(bwd_full, t), curve, -1, st)
        out.append((Tc, Tc_inv))
    return out


def twist_generators(st: SurfaceType, with_inverses: bool = False) -> list[TwistAutomorphism]:
    """Twists about a_i, b_i and chain curves c_i (a Lickorish-type family), checked on construction.

    With ``with_inverses`` the list alternates twist, inverse twist.
    """
    if st.genus < 1:
        raise ValueError("twist generators need genus >= 1")
    R = surface_relator(st)
    out = []
    for T, T_inv in _twists(st):
        for f in (T, T_inv):
            f.check()
            if f(R) != R:
                raise ValueError(f"{f.name} does not fix the relator exactly")
        for x in st.generators:
            if T_inv(T(Word([x]))) != Word([x]) or T(T_inv(Word([x]))) != Word([x]):
                raise ValueError(f"{T.name} and {T_inv.name} are not inverse")
        out.append(T)
        if with_inverses:
            out.append(T_inv)
    return out


def seed_curves(st: SurfaceType) -> list[SccWord]:
    if st.genus < 1:
        raise ValueError("seed curves need genus >= 1")
    out = []
    for i in range(1, st.genus + 1):
        out.append(SccWord(_gen("a", i), NONSEP, (f"seed a{i}",)))
        out.append(SccWord(_gen("b", i), NONSEP, (f"seed b{i}",)))
    if st.genus >= 2:
        out.append(SccWord(commutator(_gen("a", 1), _gen("b", 1)), SEP1, ("seed [a1,b1]",)))
    return out


def supported_types(st: SurfaceType) -> list[TopType]:
    return sorted({s.ttype for s in seed_curves(st)}, key=str) if st.genus >= 1 else []


def sample_curves(st: SurfaceType, ttype: TopType, count: int, rng_seed: int,
                  walk: int = DEFAULT_WALK, include_seeds: bool = False) -> list[SccWord]:
    """``count`` curves of type ``ttype``: random twist walks applied to seeds.

    Deterministic in ``rng_seed``.  With ``include_seeds`` the seeds of the
    type come first (they count toward ``count``).
    """
    if count <= 0:
        return []
    seeds = [s for s in seed_curves(st) if s.ttype == ttype]
    if not seeds:
        raise ValueError(f"no seed curve of type {ttype} on {st}")
    gens = twist_generators(st, with_inverses=True)
    rng = random.Random(rng_seed)
    out: list[SccWord] = []
    if include_seeds:
        out.extend(seeds[:count])
    while len(out) < count:
        seed = rng.choice(seeds)
        w = seed.word
        steps = []
        for _ in range(walk):
            f = rng.choice(gens)
            w = f(w)
            steps.append(f.name)
        _, w = cyclic_reduce(w)
        out.append(SccWord(w, ttype, seed.provenance + tuple(steps)))
    return out


@dataclass(frozen=True)
class PantsData:
    curves: tuple[SccWord, ...]
    pieces: tuple[tuple[Word, ...], ...]


def standard_pants(g: int = 2) -> PantsData:
    """Pants decomposition {a_1, a_2, [a_1,b_1]} of the closed genus-2 surface."""
    if g != 2:
        raise ValueError("standard_pants is only provided for genus 2")
    a1, b1, a2, b2 = _gen("a", 1), _gen("b", 1), _gen("a", 2), _gen("b", 2)
    curves = (
        SccWord(a1, TopType("nonseparating"), ("pants a1",)),
        SccWord(a2, TopType("nonseparating"), ("pants a2",)),
        SccWord(commutator(a1, b1), SEP1, ("pants [a1,b1]",)),
    )
    pieces = ((a1, b1 * a1 * b1.inverse()), (a2, b2 * a2 * b2.inverse()))
    return PantsData(curves, pieces)


def piece_boundary(piece: Sequence[Word]) -> Word:
    """Third boundary curve of a pants piece generated by two boundary loops u, v: u v^-1."""
    u, v = piece
    return u * v.inverse()


def nonseparating_ok(c: SccWord, st: SurfaceType) -> bool:
    """Homological consistency of the type tag: nonseparating iff primitive nonzero class."""
    cls = base_class(c.word, st)
    if c.ttype.tag == "nonseparating":
        return is_primitive(cls)
    return not any(cls)

"""The 2-step nilpotent group N_n[l] and the integral-gap certificate for mod-l covers.

N_n[l] is a central extension of Z^n by the exterior square of (Z/lh)^n, where
lh = l for odd l and l/2 for even l.  Elements are kept in the normal form
``x_1^{a_1} ... x_n^{a_n} * c`` with ``c`` indexed by pairs i < j; reordering
generators introduces the bilinear cocycle

    (a, c) * (a', c') = (a + a', c + c' + sum_{i>j} a_i a'_j (e_i ^ e_j)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .surface_model import SurfaceType, Word, base_class


def ell_hat(ell: int) -> int:
    return ell if ell % 2 else ell // 2


@dataclass(frozen=True)
class NilParams:
    n: int
    ell: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("N_n[l] needs n >= 2")
        if self.ell < 3:
            raise ValueError("N_n[l] needs l >= 3")

    @property
    def ell_hat(self) -> int:
        return ell_hat(self.ell)

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(combinations(range(self.n), 2))


@dataclass(frozen=True)
class NilElement:
    params: NilParams
    a: tuple[int, ...]
    c: tuple[int, ...]          # coefficients of e_i ^ e_j for i < j, reduced mod lh

    def __post_init__(self):
        p = self.params
        if len(self.a) != p.n or len(self.c) != len(p.pairs):
            raise ValueError("element does not match its parameters")
        if any(not 0 <= x < p.ell_hat for x in self.c):
            object.__setattr__(self, "c", tuple(x % p.ell_hat for x in self.c))

    def __mul__(self, other: "NilElement") -> "NilElement":
        return nil_mul(self, other)

    def __pow__(self, k: int) -> "NilElement":
        return nil_pow(self, k)

    def inverse(self) -> "NilElement":
        p = self.params
        # u * u^-1 = 1 forces c' = -c - sum_{i>j} a_i (-a_j) (e_i ^ e_j)
        c = [-x for x in self.c]
        for k, (i, j) in enumerate(p.pairs):
            c[k] -= self.a[j] * self.a[i]
        return NilElement(p, tuple(-x for x in self.a), tuple(c))

    def is_identity(self) -> bool:
        return not any(self.a) and not any(self.c)

    def to_json(self) -> dict:
        return {"a": list(self.a),
                "c": {f"e{i + 1}^e{j + 1}": x for (i, j), x in zip(self.params.pairs, self.c) if x}}


def identity(params: NilParams) -> NilElement:
    return NilElement(params, (0,) * params.n, (0,) * len(params.pairs))


def generator(params: NilParams, i: int, power: int = 1) -> NilElement:
    """x_i^power, with i counted from 1."""
    a = [0] * params.n
    a[i - 1] = power
    return NilElement(params, tuple(a), (0,) * len(params.pairs))


def central(params: NilParams, coeffs: dict[tuple[int, int], int]) -> NilElement:
    """Central element sum c_ij e_i ^ e_j with 1-based (i, j), i != j."""
    c = [0] * len(params.pairs)
    lookup = {pair: k for k, pair in enumerate(params.pairs)}
    for (i, j), x in coeffs.items():
        i, j = i - 1, j - 1
        if i < j:
            c[lookup[(i, j)]] += x
        else:
            c[lookup[(j, i)]] -= x
    return NilElement(params, (0,) * params.n, tuple(c))


def nil_mul(u: NilElement, v: NilElement) -> NilElement:
    if u.params != v.params:
        raise ValueError("elements of different groups")
    p = u.params
    c = [x + y for x, y in zip(u.c, v.c)]
    for k, (j, i) in enumerate(p.pairs):
        # term u.a_i v.a_j (e_i ^ e_j) with i > j equals -u.a_i v.a_j (e_j ^ e_i)
        c[k] -= u.a[i] * v.a[j]
    return NilElement(p, tuple(x + y for x, y in zip(u.a, v.a)), tuple(c))


def nil_pow(u: NilElement, k: int) -> NilElement:
    """u^k by square-and-multiply; negative k uses the inverse."""
    if k < 0:
        return nil_pow(u.inverse(), -k)
    result = identity(u.params)
    base = u
    while k:
        if k & 1:
            result = nil_mul(result, base)
        base = nil_mul(base, base)
        k >>= 1
    return result


def nil_commutator(u: NilElement, v: NilElement) -> NilElement:
    return u * v * u.inverse() * v.inverse()


def wedge(params: NilParams, u: NilElement, v: NilElement) -> tuple[int, ...]:
    """Coordinates of (u mod lh) ^ (v mod lh) in the basis e_i ^ e_j, i < j."""
    return tuple((u.a[i] * v.a[j] - u.a[j] * v.a[i]) % params.ell_hat for i, j in params.pairs)


def in_A(u: NilElement) -> bool:
    return all(x % u.params.ell == 0 for x in u.a)


def in_P(u: NilElement) -> bool:
    return in_A(u) and not any(u.c)


def random_element(params: NilParams, rng: random.Random, spread: int = 6) -> NilElement:
    a = tuple(rng.randint(-spread, spread) for _ in range(params.n))
    c = tuple(rng.randrange(params.ell_hat) for _ in params.pairs)
    return NilElement(params, a, c)


def phi(w: Word, params: NilParams) -> NilElement:
    """Homomorphism a_i -> x_i, b_i -> 1 from pi_1 of the closed genus-n surface."""
    out = identity(params)
    gens = [generator(params, i) for i in range(1, params.n + 1)]
    inv = [x.inverse() for x in gens]
    for x in w:
        if x.kind == "z":
            raise ValueError("phi is defined on closed surface groups; word contains z letters")
        if x.index > params.n:
            raise ValueError(f"letter {x} outside genus {params.n}")
        if x.kind == "a":
            out = out * (gens[x.index - 1] if x.sign > 0 else inv[x.index - 1])
    return out


def order_mod(cls, ell: int) -> int:
    """Additive order of a class in (Z/l)^k."""
    m = 1
    while any((m * x) % ell for x in cls):
        m += 1
    return m


class CertificateFailure(AssertionError):
    """A sampled curve escaped P under phi; the power lemma implementation is wrong."""


def integral_gap_certificate(g: int, ell: int, samples, cross_check=None) -> dict:
    """Check phi(w^m) in P for every sampled nonseparating curve and that phi([a_1,a_2]) is not.

    ``cross_check`` is an optional callable returning extra report fields
    (the lattice route); it runs after the group-theoretic verdict.
    """
    params = NilParams(g, ell)
    st = SurfaceType(g, 0)
    from .surface_model import commutator
    witness = commutator(Word.gen("a", 1), Word.gen("a", 2))
    image = phi(witness, params)
    checked = []
    for s in samples:
        cls = base_class(s.word, st)
        m = order_mod(cls, ell)
        if m != ell:
            raise CertificateFailure(f"{s.word}: class has order {m} mod {ell}, not primitive")
        img = nil_pow(phi(s.word, params), m)
        if not in_P(img):
            raise CertificateFailure(f"phi(({s.word})^{m}) = {img.to_json()} is not in P")
        checked.append(str(s.word))
    witness_ok = in_A(image) and not in_P(image) and any(image.c)
    report = {
        "ell": ell,
        "ell_hat": params.ell_hat,
        "genus": g,
        "witness_word": str(witness),
        "witness_image": image.to_json(),
        "witness_central_order": _central_order(image),
        "samples_checked": len(checked),
        "verdict": "GAP_CERTIFIED" if witness_ok and checked else "INCONCLUSIVE",
    }
    if cross_check is not None:
        report["lattice_route"] = cross_check(witness, params)
    return report


def _central_order(u: NilElement) -> int:
    h = u.params.ell_hat
    k = 1
    while any((k * x) % h for x in u.c):
        k += 1
    return k if any(u.c) else 1


def lattice_route(cx, lat, samples, witness: Word | None = None) -> dict:
    """Cross-check in H_1 of the cover: the witness lift is nonzero and outside the sampled integral span.

    Works for any modulus, including l = 2 where no group-theoretic claim is made.
    """
    from . import symplin
    from .covering import lift_class
    from .surface_model import commutator
    if witness is None:
        witness = commutator(Word.gen("a", 1), Word.gen("a", 2))
    m, wcls = lift_class(cx, lat, witness, 0)
    if m != 1:
        raise ValueError("witness does not lift to a closed loop")
    vecs = []
    for s in samples:
        p = cx.rep.perm_of(s.word)
        done = set()
        for start in range(cx.N):
            if start in done:
                continue
            k, cls = lift_class(cx, lat, s.word, start)
            s_ = start
            for _ in range(k):
                done.add(s_)
                s_ = p[s_]
            vecs.append([int(x) for x in cls])
    L = symplin.span_Z(vecs, lat.rank)
    full = symplin.IntLattice.full(lat.rank)
    idx = symplin.index(L, full)
    wvec = [int(x) for x in wcls]
    return {
        "witness_class_nonzero": any(wvec),
        "witness_in_sampled_span": symplin.member_Z(L, wvec) if any(wvec) else True,
        "sampled_rank": L.rank,
        "sampled_index": idx if isinstance(idx, int) else "infinite",
    }

"""Exact linear algebra over Q and Z for subspaces of (H, omega).

Vectors are plain sequences of Python ints (or Fractions for rational
subspaces).  Heavy elimination is delegated to FLINT through ``python-flint``;
everything stays exact.  Gram matrices are square integer matrices ``G`` with
``omega(x, y) = x^T G y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint
import numpy as np

_INT64_SAFE = 2 ** 62


def _frac(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def as_int_rows(rows) -> list[list[int]]:
    if isinstance(rows, np.ndarray):
        return [[int(x) for x in r] for r in rows.tolist()]
    return [[int(x) for x in r] for r in rows]


def fmpz(rows, ncols: int | None = None) -> flint.fmpz_mat:
    rows = as_int_rows(rows)
    if not rows:
        return flint.fmpz_mat(0, ncols or 0)
    return flint.fmpz_mat(rows)


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Integer matrix product, in int64 when provably overflow-free."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[-1]), dtype=np.int64)
    ma = int(np.abs(a).max())
    mb = int(np.abs(b).max())
    if a.dtype != object and b.dtype != object and ma * mb * a.shape[-1] < _INT64_SAFE:
        return a.astype(np.int64) @ b.astype(np.int64)
    return np.array(a, dtype=object) @ np.array(b, dtype=object)


def det(m) -> int:
    rows = as_int_rows(m)
    if not rows:
        return 1
    return int(flint.fmpz_mat(rows).det())


def rank(rows) -> int:
    rows = as_int_rows(rows)
    return flint.fmpz_mat(rows).rank() if rows and rows[0] else 0


def int_inverse(m) -> list[list[int]]:
    """Inverse of a unimodular integer matrix; raises if not unimodular."""
    mat = fmpz(m)
    d = int(mat.det())
    if abs(d) != 1:
        raise ValueError(f"matrix is not unimodular (det {d})")
    inv = mat.inv()
    return [[int(_frac(inv[i, j])) for j in range(inv.ncols())] for i in range(inv.nrows())]


def smith_invariants(rows, ncols: int) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    rows = as_int_rows(rows)
    if not rows or ncols == 0:
        return []
    s = flint.fmpz_mat(rows).snf()
    out = []
    for i in range(min(s.nrows(), s.ncols())):
        if s[i, i] != 0:
            out.append(abs(int(s[i, i])))
    return out


def _clear_denominators(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = math.gcd(*ints) if ints else 0
    return [x // g for x in ints] if g > 1 else ints


def _rref(rows: list[list], ncols: int) -> tuple[tuple[Fraction, ...], ...]:
    if not rows:
        return ()
    if all(isinstance(x, int) for r in rows for x in r):
        mat = flint.fmpq_mat(flint.fmpz_mat(rows))
    else:
        mat = flint.fmpq_mat(len(rows), ncols, [flint.fmpq(Fraction(x).numerator, Fraction(x).denominator)
                                               for r in rows for x in r])
    red, rk = mat.rref()
    return tuple(tuple(_frac(red[i, j]) for j in range(ncols)) for i in range(rk))


@dataclass(frozen=True)
class RatSubspace:
    """Subspace of Q^ambient held as its reduced row echelon basis."""

    ambient: int
    basis: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def zero(cls, ambient: int) -> "RatSubspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "RatSubspace":
        return cls(ambient, tuple(tuple(Fraction(int(i == j)) for j in range(ambient))
                                  for i in range(ambient)))

    def integer_rows(self) -> list[list[int]]:
        """Basis rows scaled to primitive integer vectors (same row space)."""
        return [_clear_denominators(r) for r in self.basis]

    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    def add(self, vectors: Iterable[Sequence]) -> "RatSubspace":
        vectors = [list(v) for v in vectors]
        if not vectors:
            return self
        for v in vectors:
            if len(v) != self.ambient:
                raise ValueError("vector length does not match ambient rank")
        rows = self.integer_rows() + vectors
        return RatSubspace(self.ambient, _rref(rows, self.ambient))

    def __add__(self, other: "RatSubspace") -> "RatSubspace":
        return self.add(other.integer_rows())

    def contains(self, v: Sequence) -> bool:
        return self.add([v]).dim == self.dim

    def issubspace(self, other: "RatSubspace") -> bool:
        return (other + self).dim == other.dim

    def as_lists(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.basis]


def span_Q(vectors: Iterable[Sequence], ambient: int) -> RatSubspace:
    return RatSubspace.zero(ambient).add(vectors)


class SpanAccumulator:
    """Incremental rational span that only re-echelonizes when rank grows.

    Merging two accumulators is order independent because the state is the
    canonical echelon basis of the span.
    """

    def __init__(self, ambient: int):
        self.ambient = ambient
        self._rows: list[list[int]] = []
        self._mat = None
        self.rank = 0

    def add(self, vectors: Iterable[Sequence[int]]) -> int:
        """Add integer vectors; return the new rank."""
        new = [list(map(int, v)) for v in vectors]
        new = [v for v in new if any(v)]
        if not new or self.rank == self.ambient:
            return self.rank
        stacked = flint.fmpz_mat(self._rows + new)
        rk = stacked.rank()
        if rk > self.rank:
            sub = _rref(self._rows + new, self.ambient)
            self._rows = [_clear_denominators(r) for r in sub]
            self.rank = rk
        return self.rank

    def merge(self, other: "SpanAccumulator") -> "SpanAccumulator":
        out = SpanAccumulator(self.ambient)
        out.add(self._rows)
        out.add(other._rows)
        return out

    def subspace(self) -> RatSubspace:
        return RatSubspace(self.ambient, _rref(self._rows, self.ambient))

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self._rows]


def nullspace_Q(rows: list[list[int]], ncols: int) -> RatSubspace:
    """Right kernel {x : M x = 0} of an integer matrix over Q."""
    if not rows:
        return RatSubspace.full(ncols)
    mat = flint.fmpz_mat(rows)
    ns, nullity = mat.nullspace()
    vecs = [[int(ns[i, j]) for i in range(ncols)] for j in range(nullity)]
    return span_Q(vecs, ncols)


def restrict_kernel(W: RatSubspace, rows: list[list[int]]) -> RatSubspace:
    """{x in W : M x = 0} for an integer matrix M given by rows."""
    if W.dim == 0 or not rows:
        return W
    B = W.integer_rows()                      # dim x n
    MB = exact_matmul(np.array(rows, dtype=object), np.array(B, dtype=object).T)
    coeffs = nullspace_Q(as_int_rows(MB), W.dim)
    if coeffs.dim == 0:
        return RatSubspace.zero(W.ambient)
    C = np.array(coeffs.integer_rows(), dtype=object)
    return span_Q((C @ np.array(B, dtype=object)).tolist(), W.ambient)


def _gram_rows(gram) -> np.ndarray:
    g = np.array(as_int_rows(gram), dtype=object)
    if g.shape[0] != g.shape[1]:
        raise ValueError("gram must be square")
    return g


def perp(W: RatSubspace, gram) -> RatSubspace:
    """omega-orthogonal complement {h : omega(h, w) = 0 for all w in W}."""
    if W.dim == 0:
        return RatSubspace.full(W.ambient)
    G = _gram_rows(gram)
    # omega(h, w) = h^T G w = (G w)^T h
    rows = (np.array(W.integer_rows(), dtype=object) @ G.T).tolist()
    return nullspace_Q(as_int_rows(rows), W.ambient)


def restricted_gram(rows, gram) -> list[list[int]]:
    B = np.array(as_int_rows(rows), dtype=object)
    if B.size == 0:
        return []
    return as_int_rows(B @ _gram_rows(gram) @ B.T)


def is_symplectic_Q(W: RatSubspace, gram) -> bool:
    """omega restricted to W is nondegenerate (W = 0 counts as symplectic)."""
    if W.dim % 2:
        return False
    if W.dim == 0:
        return True
    return det(restricted_gram(W.integer_rows(), gram)) != 0


def splits_with_perp(W: RatSubspace, gram) -> bool:
    """H = W + W^perp with trivial intersection."""
    P = perp(W, gram)
    return W.dim + P.dim == W.ambient and (W + P).dim == W.ambient


@dataclass(frozen=True)
class IntLattice:
    """Sublattice of Z^ambient held in Hermite normal form (nonzero rows)."""

    ambient: int
    basis: tuple[tuple[int, ...], ...] = ()

    @property
    def rank(self) -> int:
        return len(self.basis)

    @classmethod
    def full(cls, ambient: int) -> "IntLattice":
        return cls(ambient, tuple(tuple(int(i == j) for j in range(ambient)) for i in range(ambient)))

    def add(self, vectors: Iterable[Sequence[int]]) -> "IntLattice":
        new = [list(map(int, v)) for v in vectors]
        if not new:
            return self
        for v in new:
            if len(v) != self.ambient:
                raise ValueError("vector length does not match ambient rank")
        return IntLattice(self.ambient, _hnf([list(r) for r in self.basis] + new, self.ambient))

    def as_lists(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


def _hnf(rows: list[list[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    if not rows:
        return ()
    h = flint.fmpz_mat(rows).hnf()
    out = []
    for i in range(h.nrows()):
        r = tuple(int(h[i, j]) for j in range(ncols))
        if any(r):
            out.append(r)
    return tuple(out)


def span_Z(vectors: Iterable[Sequence[int]], ambient: int) -> IntLattice:
    return IntLattice(ambient).add(vectors)


def member_Z(L: IntLattice, v: Sequence[int]) -> bool:
    if not any(v):
        return True
    return L.add([v]).basis == L.basis


def index(sub: IntLattice, sup: IntLattice) -> int | float:
    """[sup : sub] when sub <= sup have equal rank, ``math.inf`` when ranks differ."""
    if sub.ambient != sup.ambient:
        raise ValueError("lattices live in different ambient spaces")
    if sub.rank != sup.rank:
        return math.inf
    if sub.rank == 0:
        return 1
    if sup.add(sub.basis).basis != sup.basis:
        raise ValueError("first lattice is not contained in the second")
    # sub = X sup with X integral; [sup:sub] = |det X|
    S = flint.fmpq_mat(flint.fmpz_mat([list(r) for r in sup.basis]).transpose())
    T = flint.fmpq_mat(flint.fmpz_mat([list(r) for r in sub.basis]).transpose())
    pivots = _independent_rows(sup)
    X = flint.fmpq_mat(len(pivots), sup.rank, [S[p, j] for p in pivots for j in range(sup.rank)]).solve(
        flint.fmpq_mat(len(pivots), sub.rank, [T[p, j] for p in pivots for j in range(sub.rank)]))
    return abs(int(_frac(X.det())))


def _independent_rows(L: IntLattice) -> list[int]:
    """Coordinates at which the HNF basis is invertible (its pivot columns)."""
    return [next(j for j, x in enumerate(r) if x) for r in L.basis]


def is_symplectic_Z(L: IntLattice, gram) -> bool:
    """omega restricted to L is unimodular."""
    if L.rank == 0:
        return True
    return abs(det(restricted_gram(L.as_lists(), gram))) == 1

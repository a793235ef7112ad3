"""Lifted Dehn twists acting on H_1 of a finite cover.

For a simple closed curve ``gamma`` on the base, the preimage splits into
components ``gamma_1, ..., gamma_k`` covering ``gamma`` with degrees ``d_j``.
With ``d = lcm(d_j)`` and ``e_j = d / d_j`` the power ``T_gamma^d`` lifts to
``prod_j T_{gamma_j}^{e_j}``, which acts on homology by

    h -> h + sum_j e_j * omega(h, [gamma_j]) * [gamma_j].
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from . import symplin
from .covering import CoverComplex, H1Lattice, cycles, one_step_classes
from .curves import SccWord


@dataclass(frozen=True)
class Component:
    sheet: int
    degree: int
    cls: tuple[int, ...]


@dataclass(frozen=True)
class LiftedTwistData:
    curve: SccWord
    components: tuple[Component, ...]
    d: int
    e: tuple[int, ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(c.degree for c in self.components)

    def classes(self) -> list[tuple[int, ...]]:
        return [c.cls for c in self.components]

    def to_json(self) -> dict:
        return {"word": str(self.curve.word), "type": str(self.curve.ttype),
                "d_j": list(self.degrees), "d": self.d, "e": list(self.e)}


def lcm_and_multiplicities(degrees) -> tuple[int, tuple[int, ...]]:
    d = math.lcm(*degrees) if degrees else 1
    return d, tuple(d // dj for dj in degrees)


def lifted_twist_data(cx: CoverComplex, lat: H1Lattice, gamma: SccWord) -> LiftedTwistData:
    """One component per cycle of perm(gamma); classes via the lifted closed loops."""
    if not gamma.word:
        raise ValueError("curve word is empty")
    p = cx.rep.perm_of(gamma.word)
    Y = one_step_classes(cx, lat, gamma.word)
    comps = []
    for cyc in cycles(p):
        cls = Y[list(cyc)].sum(axis=0)
        comps.append(Component(cyc[0], len(cyc), tuple(int(x) for x in cls)))
    d, e = lcm_and_multiplicities([c.degree for c in comps])
    return LiftedTwistData(gamma, tuple(comps), d, e)


def twist_matrix(lat: H1Lattice, data: LiftedTwistData) -> np.ndarray:
    """Matrix of the lifted twist on column vectors: I + sum_j e_j g_j (G^T g_j)^T."""
    n = lat.rank
    G = np.asarray(lat.gram)
    M = np.eye(n, dtype=np.int64)
    if not data.components:
        return M
    C = np.array([c.cls for c in data.components], dtype=np.int64).T          # n x k
    E = np.array(data.e, dtype=np.int64)
    # omega(h, g_j) = h^T G g_j, so row functional is (G g_j)^T
    F = symplin.exact_matmul(G, C).T                                            # k x n
    return M + symplin.exact_matmul(C * E, F)


def matrix_hash(M) -> str:
    arr = np.ascontiguousarray(np.asarray(M, dtype=np.int64))
    return hashlib.sha256(arr.tobytes() + str(arr.shape).encode()).hexdigest()[:16]


def is_symplectic_matrix(M, gram) -> bool:
    G = np.asarray(gram)
    return bool(np.array_equal(symplin.exact_matmul(symplin.exact_matmul(np.asarray(M).T, G), M), G))


def is_unipotent_order2(M) -> bool:
    """(M - I)^2 == 0."""
    D = np.asarray(M) - np.eye(len(M), dtype=np.int64)
    return not np.any(symplin.exact_matmul(D, D))


def fixed_space(matrices, ambient: int | None = None) -> symplin.RatSubspace:
    """Intersection of ker(M - I) over Q, computed incrementally."""
    matrices = list(matrices)
    if ambient is None:
        if not matrices:
            raise ValueError("ambient rank needed for an empty list")
        ambient = len(matrices[0])
    W = symplin.RatSubspace.full(ambient)
    for M in matrices:
        if W.dim == 0:
            break
        D = np.asarray(M, dtype=np.int64) - np.eye(ambient, dtype=np.int64)
        rows = [r for r in D.tolist() if any(r)]
        W = symplin.restrict_kernel(W, rows)
    return W


def orbit_witness(lat: H1Lattice, data: LiftedTwistData, v) -> tuple[tuple, str]:
    """w = sum_j e_j omega(v, g_j) g_j; INFINITE if w != 0 (v + n w distinct), else FIXED.

    ``v`` may have rational entries.
    """
    G = np.asarray(lat.gram, dtype=object)
    v = np.asarray(v, dtype=object)
    w = np.zeros(lat.rank, dtype=object)
    for comp, ej in zip(data.components, data.e):
        g = np.asarray(comp.cls, dtype=object)
        w = w + ej * (v @ G @ g) * g
    w = tuple(w.tolist())
    return w, ("INFINITE" if any(x != 0 for x in w) else "FIXED")


def orbit_points_distinct(v, w, n_max: int = 100) -> bool:
    pts = {tuple(vi + n * wi for vi, wi in zip(v, w)) for n in range(1, n_max + 1)}
    return len(pts) == n_max

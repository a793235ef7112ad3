"""Finite branched covers of marked surfaces from permutation representations.

A cover of degree ``N`` is given by a permutation of the sheets ``0..N-1`` for
every generator.  Sheets act on the right: sheet ``s`` followed along the letter
``x`` ends on ``perm[x][s]`` and a word acts letter by letter, left to right.

The covering surface is the pullback of the one-vertex CW structure of the base:
``N`` vertices, one edge per (generator, sheet), one relator polygon per sheet,
and one cap disk per cycle of each ``perm(z_j)``.  Homology of the closed cover
is computed with a tree-cotree decomposition, which yields an integral cycle
basis together with the dual cocycles; the intersection form is obtained from
the cup product of those cocycles.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import symplin
from .surface_model import Letter, SurfaceType, Word, surface_relator


class CoverError(ValueError):
    """Invalid monodromy data (not a permutation, relator not respected, disconnected)."""


# ---------------------------------------------------------------------------
# permutation representations


def _inverse_perm(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of a permutation, each starting at its smallest element."""
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        cyc = []
        t = s
        while not seen[t]:
            seen[t] = True
            cyc.append(t)
            t = p[t]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class PermutationRep:
    """Monodromy of a connected cover: one permutation of ``range(degree)`` per generator.

    ``group`` is set for regular abelian covers; sheet ``s`` is then the
    ``s``-th element of ``Z/d_1 x ... x Z/d_k`` in lexicographic order.
    """

    st: SurfaceType
    degree: int
    perms: tuple[tuple[int, ...], ...]
    group: tuple[int, ...] | None = None
    label: str = ""
    _inverses: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        gens = self.st.generators
        if self.degree < 1:
            raise CoverError("degree must be at least 1")
        if len(self.perms) != len(gens):
            raise CoverError(f"expected {len(gens)} permutations, got {len(self.perms)}")
        for x, p in zip(gens, self.perms):
            if sorted(p) != list(range(self.degree)):
                raise CoverError(f"perm({x}) is not a permutation of {self.degree} sheets")
        object.__setattr__(self, "_inverses", tuple(_inverse_perm(p) for p in self.perms))
        rel = self.perm_of(surface_relator(self.st))
        if any(rel[s] != s for s in range(self.degree)):
            raise CoverError("relator is not sent to the identity permutation")
        if not self.is_transitive():
            raise CoverError("cover disconnected: action is not transitive")

    def perm(self, x: Letter) -> tuple[int, ...]:
        k = self.st.generator_index(x)
        return self.perms[k] if x.sign > 0 else self._inverses[k]

    def act(self, w: Word, sheet: int) -> int:
        for x in w:
            sheet = self.perm(x)[sheet]
        return sheet

    def perm_of(self, w: Word) -> tuple[int, ...]:
        cur = list(range(self.degree))
        for x in w:
            p = self.perm(x)
            cur = [p[s] for s in cur]
        return tuple(cur)

    def is_transitive(self) -> bool:
        seen = {0}
        todo = [0]
        while todo:
            s = todo.pop()
            for p, q in zip(self.perms, self._inverses):
                for t in (p[s], q[s]):
                    if t not in seen:
                        seen.add(t)
                        todo.append(t)
        return len(seen) == self.degree

    # regular abelian covers -------------------------------------------------
    def elements(self) -> list[tuple[int, ...]]:
        if self.group is None:
            raise CoverError("not a regular abelian cover")
        return list(itertools.product(*(range(d) for d in self.group)))

    def to_json(self) -> dict:
        gens = self.st.generators
        return {
            "genus": self.st.genus,
            "marked": self.st.marked,
            "degree": self.degree,
            "perm": {str(x): [s + 1 for s in p] for x, p in zip(gens, self.perms)},
        }


def abelian_rep(g: int, moduli: Sequence[int], targets: Mapping[str, Sequence[int]],
                label: str = "") -> PermutationRep:
    """Regular cover with deck group ``Z/d_1 x ... x Z/d_k``.

    ``targets`` maps generator names ``"a1"``, ``"b1"``, ... to group elements;
    missing generators go to zero.  The assignment must generate the group.
    """
    st = SurfaceType(g, 0)
    moduli = tuple(int(d) for d in moduli)
    if any(d < 1 for d in moduli):
        raise CoverError("moduli must be positive")
    elems = list(itertools.product(*(range(d) for d in moduli)))
    index = {e: i for i, e in enumerate(elems)}
    names = {str(x) for x in st.generators}
    for key in targets:
        if key not in names:
            raise CoverError(f"unknown generator {key!r} for genus {g}")
    perms = []
    for x in st.generators:
        t = tuple(targets.get(str(x), (0,) * len(moduli)))
        if len(t) != len(moduli):
            raise CoverError(f"target of {x} has wrong length")
        perms.append(tuple(index[tuple((e[i] + t[i]) % moduli[i] for i in range(len(moduli)))]
                           for e in elems))
    try:
        return PermutationRep(st, len(elems), tuple(perms), group=moduli, label=label)
    except CoverError as exc:
        if "disconnected" in str(exc):
            raise CoverError("cover disconnected: targets do not generate the group") from None
        raise


def mod_ell_rep(g: int, ell: int) -> PermutationRep:
    """Regular cover for pi_1 -> H_1(Sigma; Z/ell), of degree ell^(2g)."""
    if ell < 2:
        raise CoverError("ell must be at least 2")
    if g < 1:
        raise CoverError("genus must be at least 1")
    targets = {}
    for i in range(g):
        for j, kind in enumerate("ab"):
            v = [0] * (2 * g)
            v[2 * i + j] = 1
            targets[f"{kind}{i + 1}"] = v
    return abelian_rep(g, [ell] * (2 * g), targets, label=f"mod_ell(g={g},ell={ell})")


def identity_rep(st: SurfaceType) -> PermutationRep:
    return PermutationRep(st, 1, tuple((0,) for _ in st.generators), group=(), label="identity")


def _conjugator(c: Sequence[int], d: Sequence[int], rng: random.Random) -> tuple[int, ...] | None:
    """Some ``b`` with ``c[b[s]] == b[d[s]]`` for all s, or None if cycle types differ."""
    by_len: dict[int, list[tuple[int, ...]]] = {}
    for cyc in cycles(c):
        by_len.setdefault(len(cyc), []).append(cyc)
    for v in by_len.values():
        rng.shuffle(v)
    b = [None] * len(c)
    for cyc in cycles(d):
        pool = by_len.get(len(cyc))
        if not pool:
            return None
        target = pool.pop()
        shift = rng.randrange(len(cyc))
        for k, s in enumerate(cyc):
            b[s] = target[(k + shift) % len(cyc)]
    return tuple(b)


def random_rep(st: SurfaceType, degree: int, seed: int, max_tries: int = 10000) -> PermutationRep:
    """Random transitive representation, deterministic in ``seed``.

    All generators but the last handle (or the last z when g = 0) are uniform;
    the last commutator is solved for by conjugating cycle types.
    """
    rng = random.Random(seed)
    gens = st.generators
    n = degree
    for _ in range(max_tries):
        perms: dict[int, tuple[int, ...]] = {}
        for k in range(len(gens)):
            p = list(range(n))
            rng.shuffle(p)
            perms[k] = tuple(p)

        def compose(ws):
            cur = list(range(n))
            for k, sign in ws:
                p = perms[k] if sign > 0 else _inverse_perm(perms[k])
                cur = [p[s] for s in cur]
            return tuple(cur)

        if st.genus == 0:
            if not gens:
                return identity_rep(st)
            last = len(gens) - 1
            prefix = compose([(k, 1) for k in range(last)])
            perms[last] = _inverse_perm(prefix)
        else:
            ka, kb = 2 * (st.genus - 1), 2 * (st.genus - 1) + 1
            before = [item for i in range(st.genus - 1)
                      for item in ((2 * i, 1), (2 * i + 1, 1), (2 * i, -1), (2 * i + 1, -1))]
            after = [(2 * st.genus + j, 1) for j in range(st.marked)]
            P = compose(before)
            Z = compose(after)
            # need a * b * a^-1 * b^-1 == P^-1 * Z^-1 (composition left to right)
            PZ = [Z[P[s]] for s in range(n)]
            Y = _inverse_perm(PZ)
            a = perms[ka]
            a_inv = _inverse_perm(a)
            # b * a^-1 * b^-1 == a^-1 * Y  <=>  c[b[s]] == b[d[s]] with c = a^-1, d = a^-1 * Y
            d = tuple(Y[a_inv[s]] for s in range(n))
            b = _conjugator(a_inv, d, rng)
            if b is None:
                continue
            perms[kb] = b
        try:
            return PermutationRep(st, n, tuple(perms[k] for k in range(len(gens))),
                                  label=f"random(deg={n},seed={seed})")
        except CoverError:
            continue
    raise CoverError("could not find a transitive representation")


def rep_from_config(cfg: Mapping) -> PermutationRep:
    """Build a representation from the JSON cover description.

    Either ``{"type": "mod_ell", "genus": g, "ell": l}``, ``{"type": "abelian",
    "genus": g, "moduli": [...], "targets": {...}}``, ``{"type": "random",
    "genus": g, "marked": n, "degree": N, "seed": s}``, or an explicit table
    ``{"genus": g, "marked": n, "degree": N, "perm": {"a1": [...], ...}}`` with
    one-line permutations on ``1..N``.
    """
    kind = cfg.get("type", "explicit")
    if kind == "mod_ell":
        return mod_ell_rep(int(cfg["genus"]), int(cfg["ell"]))
    if kind == "abelian":
        return abelian_rep(int(cfg["genus"]), cfg["moduli"], cfg["targets"])
    if kind == "identity":
        return identity_rep(SurfaceType(int(cfg["genus"]), int(cfg.get("marked", 0))))
    if kind == "random":
        st = SurfaceType(int(cfg["genus"]), int(cfg.get("marked", 0)))
        return random_rep(st, int(cfg["degree"]), int(cfg.get("seed", 0)))
    if kind != "explicit":
        raise CoverError(f"unknown cover type {kind!r}")
    st = SurfaceType(int(cfg["genus"]), int(cfg.get("marked", 0)))
    n = int(cfg["degree"])
    table = cfg.get("perm", {})
    perms = []
    for x in st.generators:
        img = table.get(str(x))
        if img is None:
            perms.append(tuple(range(n)))
            continue
        if len(img) != n:
            raise CoverError(f"perm({x}) has {len(img)} entries, expected {n}")
        perms.append(tuple(int(i) - 1 for i in img))
    extra = set(table) - {str(x) for x in st.generators}
    if extra:
        raise CoverError(f"unknown generators in perm table: {sorted(extra)}")
    return PermutationRep(st, n, tuple(perms), label=cfg.get("label", ""))


def load_rep(path: str) -> PermutationRep:
    with open(path) as fh:
        return rep_from_config(json.load(fh))


# ---------------------------------------------------------------------------
# cell structure


@dataclass(frozen=True)
class Face:
    boundary: tuple[tuple[int, int], ...]   # (edge, +1/-1) in traversal order
    kind: str                              # "polygon" or "cap"
    sheet: int
    ramification: int = 1
    marked: int = 0                        # j for caps around z_j


class CoverComplex:
    """Pulled-back CW structure of the closed covering surface.

    Edge ``k * N + s`` is the lift of generator ``k`` starting on sheet ``s``.
    Darts are ``(edge, +1)`` for the tail end and ``(edge, -1)`` for the head.
    """

    def __init__(self, rep: PermutationRep):
        self.rep = rep
        self.st = rep.st
        self.N = rep.degree
        self.gens = rep.st.generators
        self.n_edges = len(self.gens) * self.N
        relator = surface_relator(self.st)
        faces = []
        for s in range(self.N):
            faces.append(Face(tuple(self._walk(relator, s)), "polygon", s))
        for j in range(1, self.st.marked + 1):
            z = Letter("z", j, 1)
            for cyc in cycles(rep.perm(z)):
                walk = self._walk(Word([z.inverse()] * len(cyc)), cyc[0])
                faces.append(Face(tuple(walk), "cap", cyc[0], len(cyc), j))
        self.faces = tuple(faces)
        self._incidence()
        self.rotation = self._rotation(relator)

    def edge(self, k: int, s: int) -> int:
        return k * self.N + s

    def tail(self, e: int) -> int:
        return e % self.N

    def head(self, e: int) -> int:
        return self.rep.perms[e // self.N][e % self.N]

    def edge_label(self, e: int) -> str:
        return f"{self.gens[e // self.N]}@{e % self.N}"

    def _walk(self, w: Word, s: int) -> list[tuple[int, int]]:
        out = []
        for x in w:
            k = self.st.generator_index(x)
            if x.sign > 0:
                out.append((self.edge(k, s), 1))
                s = self.rep.perms[k][s]
            else:
                s = self.rep._inverses[k][s]
                out.append((self.edge(k, s), -1))
        return out

    def _incidence(self):
        plus = [None] * self.n_edges
        minus = [None] * self.n_edges
        for f, face in enumerate(self.faces):
            for e, sign in face.boundary:
                slot = plus if sign > 0 else minus
                if slot[e] is not None:
                    raise CoverError(f"edge {self.edge_label(e)} appears twice with sign {sign}")
                slot[e] = f
        if any(x is None for x in plus) or any(x is None for x in minus):
            raise CoverError("some edge is not on two face sides; not a closed surface")
        self.face_plus = tuple(plus)
        self.face_minus = tuple(minus)

    def _rotation(self, relator: Word) -> dict[int, tuple[tuple[int, int], ...]]:
        """Cyclic order of darts at each vertex, pulled back from the base corners."""
        def depart(x):
            return (self.st.generator_index(x), 1 if x.sign > 0 else -1)

        def arrive(x):
            return (self.st.generator_index(x), -1 if x.sign > 0 else 1)

        succ = {}
        letters = relator.letters
        for p, x in enumerate(letters):
            succ[arrive(x)] = depart(letters[(p + 1) % len(letters)])
        for j in range(1, self.st.marked + 1):
            k = 2 * self.st.genus + j - 1
            succ[(k, 1)] = (k, -1)
        base = []
        if succ:
            start = min(succ)
            d = start
            while True:
                base.append(d)
                d = succ[d]
                if d == start:
                    break
        if len(base) != 2 * len(self.gens):
            raise CoverError("base rotation is not a single cycle")
        self.base_rotation = tuple(base)
        rot = {}
        for v in range(self.N):
            darts = []
            for k, end in base:
                e = self.edge(k, v) if end > 0 else self.edge(k, self.rep._inverses[k][v])
                darts.append((e, end))
            rot[v] = tuple(darts)
        return rot

    def dart_vertex(self, dart: tuple[int, int]) -> int:
        e, end = dart
        return self.tail(e) if end > 0 else self.head(e)

    def traced_faces(self) -> list[list[tuple[int, int]]]:
        """Faces of the ribbon graph (orbits of rotation after crossing an edge)."""
        nxt = {}
        for v, darts in self.rotation.items():
            for i, d in enumerate(darts):
                nxt[d] = darts[(i + 1) % len(darts)]
        seen = set()
        out = []
        for v in range(self.N):
            for d in self.rotation[v]:
                if d in seen:
                    continue
                orbit = []
                cur = d
                while cur not in seen:
                    seen.add(cur)
                    orbit.append(cur)
                    e, end = cur
                    cur = nxt[(e, -end)]
                out.append(orbit)
        return out

    @property
    def n_vertices(self) -> int:
        return self.N

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    def riemann_hurwitz(self) -> int:
        """N * chi(punctured base) + total number of cap cycles."""
        caps = sum(1 for f in self.faces if f.kind == "cap")
        return self.N * (2 - 2 * self.st.genus - self.st.marked) + caps

    @property
    def cover_genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def boundary_matrices(self) -> tuple[list[list[int]], list[list[int]]]:
        """Integer matrices of d1 (V x E) and d2 (E x F)."""
        d1 = [[0] * self.n_edges for _ in range(self.N)]
        for e in range(self.n_edges):
            d1[self.head(e)][e] += 1
            d1[self.tail(e)][e] -= 1
        d2 = [[0] * len(self.faces) for _ in range(self.n_edges)]
        for f, face in enumerate(self.faces):
            for e, sign in face.boundary:
                d2[e][f] += sign
        return d1, d2


def build_complex(rep: PermutationRep) -> CoverComplex:
    cx = CoverComplex(rep)
    if cx.euler_characteristic != cx.riemann_hurwitz() or cx.euler_characteristic % 2:
        raise CoverError("Euler characteristic fails the Riemann-Hurwitz count")
    return cx


# ---------------------------------------------------------------------------
# homology


@dataclass
class H1Lattice:
    """H_1(closed cover; Z) with an integral basis and the intersection form.

    ``cocycles`` is the ``rank x E`` matrix of 1-cocycles dual to the basis:
    the class of any integral 1-cycle ``x`` (a vector over edges) is
    ``cocycles @ x``.
    """

    rank: int
    basis: list[dict[int, int]]
    basis_words: list[Word]
    cocycles: np.ndarray
    gram: np.ndarray
    leftover_edges: tuple[int, ...]

    def omega(self, u, v) -> int:
        return int(np.asarray(u, dtype=object) @ np.asarray(self.gram, dtype=object)
                   @ np.asarray(v, dtype=object))

    def classify_chain(self, chain: Mapping[int, int]) -> np.ndarray:
        out = np.zeros(self.rank, dtype=np.int64)
        for e, c in chain.items():
            out += c * self.cocycles[:, e]
        return out


def _spanning_tree(cx: CoverComplex):
    """BFS tree on sheets; returns parent (edge, sign) toward each vertex and the edge set."""
    parent: dict[int, tuple[int, int, int]] = {0: None}
    order = deque([0])
    tree = set()
    while order:
        v = order.popleft()
        for k in range(len(cx.gens)):
            fwd = cx.rep.perms[k][v]
            if fwd not in parent:
                e = cx.edge(k, v)
                parent[fwd] = (e, 1, v)
                tree.add(e)
                order.append(fwd)
            bwd = cx.rep._inverses[k][v]
            if bwd not in parent:
                e = cx.edge(k, bwd)
                parent[bwd] = (e, -1, v)
                tree.add(e)
                order.append(bwd)
    return parent, tree


def _root_path(cx, parent, v) -> list[tuple[int, int]]:
    """Edges (with traversal sign) from sheet 0 to ``v`` along the tree."""
    path = []
    while parent[v] is not None:
        e, sign, u = parent[v]
        path.append((e, sign))
        v = u
    path.reverse()
    return path


def _path_word(cx, path) -> list[Letter]:
    out = []
    for e, sign in path:
        x = cx.gens[e // cx.N]
        out.append(x if sign > 0 else x.inverse())
    return out


def homology_lattice(cx: CoverComplex, verify: bool = True) -> H1Lattice:
    """Tree-cotree basis of H_1(cover; Z), dual cocycles and the Gram matrix.

    With ``verify`` the rank and the absence of torsion are cross-checked
    against the Smith normal form of the boundary matrices.
    """
    parent, tree = _spanning_tree(cx)
    if len(parent) != cx.N:
        raise CoverError("cover disconnected")
    F = len(cx.faces)
    # dual spanning tree on faces through edges outside the primal tree
    dual_parent: dict[int, tuple[int, int] | None] = {0: None}
    adj: list[list[int]] = [[] for _ in range(F)]
    for e in range(cx.n_edges):
        if e in tree or cx.face_plus[e] == cx.face_minus[e]:
            continue
        adj[cx.face_plus[e]].append(e)
        adj[cx.face_minus[e]].append(e)
    cotree = set()
    order = deque([0])
    bfs = []
    while order:
        f = order.popleft()
        bfs.append(f)
        for e in adj[f]:
            other = cx.face_minus[e] if cx.face_plus[e] == f else cx.face_plus[e]
            if other not in dual_parent:
                dual_parent[other] = (e, f)
                cotree.add(e)
                order.append(other)
    if len(dual_parent) != F:
        raise CoverError("dual graph disconnected; complex is not a connected surface")
    leftover = tuple(e for e in range(cx.n_edges) if e not in tree and e not in cotree)
    expected = 2 - cx.euler_characteristic
    if len(leftover) != expected:
        raise CoverError(f"tree-cotree found {len(leftover)} generators, expected {expected}")

    r = len(leftover)
    basis = []
    words = []
    for e in leftover:
        chain: dict[int, int] = {}
        path = (_root_path(cx, parent, cx.tail(e)) + [(e, 1)]
                + [(pe, -ps) for pe, ps in reversed(_root_path(cx, parent, cx.head(e)))])
        for pe, ps in path:
            chain[pe] = chain.get(pe, 0) + ps
        basis.append({k: v for k, v in chain.items() if v})
        words.append(Word(_path_word(cx, path)))

    # cocycle dual to leftover edge e: 1 on e, corrected along the dual tree
    A = np.zeros((r, cx.n_edges), dtype=np.int64)
    children_first = list(reversed(bfs))
    for j, e in enumerate(leftover):
        A[j, e] = 1
        demand = [0] * F
        demand[cx.face_plus[e]] -= 1
        demand[cx.face_minus[e]] += 1
        sub = demand[:]
        for f in children_first:
            if dual_parent[f] is None:
                if sub[f] != 0:
                    raise CoverError("cocycle equations are inconsistent")
                continue
            te, pf = dual_parent[f]
            s_f = 1 if cx.face_plus[te] == f else -1
            A[j, te] = sub[f] * s_f
            sub[pf] += sub[f]

    for i, chain in enumerate(basis):
        col = np.zeros(r, dtype=np.int64)
        for e, c in chain.items():
            col += c * A[:, e]
        if any(col[j] != (1 if j == i else 0) for j in range(r)):
            raise CoverError("cocycles are not dual to the cycle basis")

    gram = _intersection_from_cup(cx, A)

    if verify:
        d1, d2 = symplin_boundary_check(cx)
        if d1 != r:
            raise CoverError(f"Smith normal form gives rank {d1}, tree-cotree gives {r}")
        if d2:
            raise CoverError(f"torsion {d2} detected in H_1 of a closed orientable surface")

    return H1Lattice(r, basis, words, A, gram, leftover)


def symplin_boundary_check(cx: CoverComplex) -> tuple[int, list[int]]:
    """(rank of H_1, nontrivial torsion coefficients) from Smith forms of d1 and d2."""
    d1, d2 = cx.boundary_matrices()
    r1 = len(symplin.smith_invariants(d1, cx.n_edges))
    inv2 = symplin.smith_invariants(d2, len(cx.faces))
    rank = cx.n_edges - r1 - len(inv2)
    return rank, [d for d in inv2 if d != 1]


# sign making the identity cover reproduce omega([a_1],[b_1]) = +1
_CUP_TO_OMEGA = -1


def _intersection_from_cup(cx: CoverComplex, A: np.ndarray) -> np.ndarray:
    """Gram matrix of omega on the cycle basis dual to the cocycles ``A``.

    The cup form on the dual cocycles is evaluated on the fundamental class
    (all faces, coherently oriented) with the Fox-derivative formula for a
    2-cell; omega is then a fixed sign times its inverse.
    """
    r = A.shape[0]
    if r == 0:
        return np.zeros((0, 0), dtype=np.int64)
    cup = symplin.exact_matmul(A, A.T)          # negative occurrences: one per edge
    for face in cx.faces:
        edges = [e for e, _ in face.boundary]
        signs = np.array([s for _, s in face.boundary], dtype=np.int64)
        V = A[:, edges] * signs
        P = np.cumsum(V, axis=1) - V
        cup = cup + symplin.exact_matmul(P, V.T)
    if np.any(cup + cup.T != 0):
        raise CoverError("cup form is not skew-symmetric")
    inv = symplin.int_inverse(cup)
    return _CUP_TO_OMEGA * np.array(inv, dtype=np.int64)


def intersection_gram(cx: CoverComplex, lat: H1Lattice) -> np.ndarray:
    return lat.gram


# ---------------------------------------------------------------------------
# lifting loops


def one_step_classes(cx: CoverComplex, lat: H1Lattice, w: Word) -> np.ndarray:
    """Row ``s``: cocycle values on the lift of ``w`` starting at sheet ``s``.

    The lift from ``s`` is generally not closed; summing rows over a cycle of
    ``perm(w)`` gives the class of the closed lifted component.
    """
    N = cx.N
    pos = np.arange(N)
    X = np.zeros((N, cx.n_edges), dtype=np.int64)
    perms = [np.array(p) for p in cx.rep.perms]
    invs = [np.array(p) for p in cx.rep._inverses]
    for x in w:
        k = cx.st.generator_index(x)
        if x.sign > 0:
            np.add.at(X, (np.arange(N), k * N + pos), 1)
            pos = perms[k][pos]
        else:
            pos = invs[k][pos]
            np.add.at(X, (np.arange(N), k * N + pos), -1)
    return symplin.exact_matmul(X, lat.cocycles.T)


def lift_class(cx: CoverComplex, lat: H1Lattice, w: Word, start_sheet: int) -> tuple[int, np.ndarray]:
    """(m, class of the lift of w^m from ``start_sheet``), m the cycle length of perm(w)."""
    if not w:
        raise ValueError("cannot lift the empty word")
    if not 0 <= start_sheet < cx.N:
        raise ValueError(f"sheet {start_sheet} out of range")
    p = cx.rep.perm_of(w)
    s = start_sheet
    visited = []
    while True:
        visited.append(s)
        s = p[s]
        if s == start_sheet:
            break
    Y = one_step_classes(cx, lat, w)
    return len(visited), Y[visited].sum(axis=0)


def lift_closed_chain(cx: CoverComplex, w: Word, start_sheet: int) -> dict[int, int]:
    """Edge chain of the lift of ``w`` from ``start_sheet`` (must close up)."""
    chain: dict[int, int] = {}
    s = start_sheet
    for x in w:
        k = cx.st.generator_index(x)
        if x.sign > 0:
            e = cx.edge(k, s)
            s = cx.rep.perms[k][s]
            chain[e] = chain.get(e, 0) + 1
        else:
            s = cx.rep._inverses[k][s]
            e = cx.edge(k, s)
            chain[e] = chain.get(e, 0) - 1
    if s != start_sheet:
        raise ValueError("lift is not closed")
    return {e: c for e, c in chain.items() if c}


# ---------------------------------------------------------------------------
# deck transformations


def deck_matrix(cx: CoverComplex, lat: H1Lattice, element: Sequence[int]) -> np.ndarray:
    """Matrix (acting on column vectors) of the deck translation by ``element``."""
    rep = cx.rep
    if rep.group is None:
        raise CoverError("deck_matrix needs a regular cover built by abelian_rep/mod_ell_rep")
    element = tuple(int(x) for x in element)
    if len(element) != len(rep.group):
        raise CoverError("group element has the wrong length")
    elems = rep.elements()
    index = {e: i for i, e in enumerate(elems)}
    shift = [index[tuple((e[i] + element[i]) % rep.group[i] for i in range(len(element)))]
             for e in elems]
    M = np.zeros((lat.rank, lat.rank), dtype=np.int64)
    for i, chain in enumerate(lat.basis):
        moved = {}
        for e, c in chain.items():
            k, s = divmod(e, cx.N)
            moved[cx.edge(k, shift[s])] = c
        M[:, i] = lat.classify_chain(moved)
    return M


def cover_summary(cx: CoverComplex, lat: H1Lattice) -> dict:
    return {
        "label": cx.rep.label,
        "genus": cx.st.genus,
        "marked": cx.st.marked,
        "degree": cx.N,
        "V": cx.n_vertices,
        "E": cx.n_edges,
        "F": cx.n_faces,
        "chi": cx.euler_characteristic,
        "riemann_hurwitz": cx.riemann_hurwitz(),
        "riemann_hurwitz_ok": cx.euler_characteristic == cx.riemann_hurwitz(),
        "cover_genus": cx.cover_genus,
        "rank": lat.rank,
        "abs_det_gram": abs(symplin.det(lat.gram)),
        "ramification": sorted(f.ramification for f in cx.faces if f.kind == "cap"),
    }

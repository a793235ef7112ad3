"""Sampling-based verification of the span, symplecticity, twist-fixed and pants statements.

Every check draws curves of the requested types, lifts them to the cover and
accumulates the rational span of the component classes.  Sampling stops at
full rank, after ``window`` consecutive samples without rank growth, or when
the budget runs out.  Verdicts are three-valued: TRUE, FALSE (with a
certificate, which for statements that are theorems means a bug) and
INCONCLUSIVE (the sample was too small).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import symplin
from .covering import CoverComplex, H1Lattice, PermutationRep, build_complex, homology_lattice, lift_class
from .curves import NONSEP, PantsData, SccWord, TopType, sample_curves, supported_types
from .surface_model import Word
from .twist_lift import (
    LiftedTwistData,
    fixed_space,
    lifted_twist_data,
    matrix_hash,
    orbit_points_distinct,
    orbit_witness,
    twist_matrix,
)

DEFAULT_BUDGET = 400
DEFAULT_WINDOW = 50

TRUE, FALSE, INCONCLUSIVE = "TRUE", "FALSE", "INCONCLUSIVE"


class ImplementationFailure(AssertionError):
    """An exact computation contradicted a proved statement."""


@dataclass
class Cover:
    """A permutation representation together with its complex and homology lattice."""

    rep: PermutationRep
    cx: CoverComplex
    lat: H1Lattice
    cover_id: str

    @classmethod
    def from_rep(cls, rep: PermutationRep, cover_id: str | None = None) -> "Cover":
        cx = build_complex(rep)
        return cls(rep, cx, homology_lattice(cx), cover_id or rep.label or f"perm(N={rep.degree})")

    @property
    def rank(self) -> int:
        return self.lat.rank


@dataclass
class Saturation:
    span: symplin.RatSubspace
    data: list[LiftedTwistData]
    trace: list[tuple[int, int]]
    samples_used: int
    saturated: bool
    full: bool

    def report_fields(self) -> dict:
        return {"rank_trace": [list(t) for t in self.trace], "samples_used": self.samples_used,
                "saturated": self.saturated, "rank": self.span.dim}


def _check_sigma(cover: Cover, sigma: Sequence[TopType]) -> None:
    supported = set(supported_types(cover.rep.st))
    for t in sigma:
        if t not in supported:
            raise ValueError(f"unsupported curve type {t} on {cover.rep.st}; supported: "
                             + ", ".join(sorted(map(str, supported))))


def curve_stream(cover: Cover, sigma: Sequence[TopType], budget: int, seed: int) -> list[SccWord]:
    """Seeds of every type first, then random-walk samples interleaved round-robin over types.

    The first k curves do not depend on the budget, so ranks are monotone in it.
    """
    if budget <= 0 or not sigma:
        return []
    st = cover.rep.st
    per_type = -(-budget // len(sigma))
    streams = [sample_curves(st, t, per_type, seed + 7919 * k, include_seeds=True)
               for k, t in enumerate(sorted(sigma, key=str))]
    out = []
    for i in range(per_type):
        for s in streams:
            if i < len(s):
                out.append(s[i])
    return out[:budget]


def saturate(cover: Cover, sigma: Sequence[TopType], budget: int = DEFAULT_BUDGET, seed: int = 0,
             window: int = DEFAULT_WINDOW) -> Saturation:
    _check_sigma(cover, sigma)
    acc = symplin.SpanAccumulator(cover.rank)
    trace: list[tuple[int, int]] = [(0, 0)]
    data = []
    stale = 0
    used = 0
    for s in curve_stream(cover, sigma, budget, seed):
        d = lifted_twist_data(cover.cx, cover.lat, s)
        data.append(d)
        used += 1
        before = trace[-1][1]
        r = acc.add(d.classes())
        if r > before:
            trace.append((used, r))
            stale = 0
        else:
            stale += 1
        if r == cover.rank or stale >= window:
            break
    r = trace[-1][1]
    return Saturation(acc.subspace(), data, trace, used, r == cover.rank or stale >= window, r == cover.rank)


def _base_report(check: str, cover: Cover, sigma, budget, seed, window) -> dict:
    return {"check": check, "cover": cover.cover_id, "degree": cover.rep.degree,
            "ambient_rank": cover.rank, "sigma": [str(t) for t in sigma],
            "budget": budget, "rng_seed": seed, "window": window}


def rational_fullness(cover: Cover, sigma: Sequence[TopType] = (NONSEP,), budget: int = DEFAULT_BUDGET,
                      seed: int = 0, window: int = DEFAULT_WINDOW) -> dict:
    sat = saturate(cover, sigma, budget, seed, window)
    rep = _base_report("fullness", cover, sigma, budget, seed, window)
    rep.update(sat.report_fields())
    rep["verdict"] = "FULL" if sat.full else "INCONCLUSIVE"
    rep["status"] = TRUE if sat.full else INCONCLUSIVE
    return rep


def symplectic_check(cover: Cover, sigma: Sequence[TopType] = (NONSEP,), budget: int = DEFAULT_BUDGET,
                     seed: int = 0, window: int = DEFAULT_WINDOW) -> dict:
    sat = saturate(cover, sigma, budget, seed, window)
    W = sat.span
    G = cover.lat.gram
    symp = symplin.is_symplectic_Q(W, G)
    splits = symplin.splits_with_perp(W, G)
    if symp != splits:
        raise ImplementationFailure("restricted-Gram test and direct-sum test disagree")
    Wp = symplin.perp(W, G)
    rep = _base_report("symplectic", cover, sigma, budget, seed, window)
    rep.update(sat.report_fields())
    rep.update({"dim_W": W.dim, "dim_perp": Wp.dim, "symplectic": symp, "direct_sum": splits})
    if W.dim % 2 == 0 and W.dim:
        rep["restricted_det"] = symplin.det(symplin.restricted_gram(W.integer_rows(), G))
    if sat.full and not symp:
        raise ImplementationFailure("the whole space failed the symplectic test")
    if symp:
        rep["verdict"], rep["status"] = "SYMPLECTIC", TRUE
    elif sat.saturated:
        # a radical vector of W is the certificate; it may still be a sampling artefact
        omega_rows = (np.array(W.integer_rows(), dtype=object) @ np.asarray(G, dtype=object).T).tolist()
        radical = symplin.restrict_kernel(W, omega_rows)
        rep["radical"] = radical.integer_rows()
        rep["verdict"], rep["status"] = "NOT_SYMPLECTIC_AT_SATURATION", INCONCLUSIVE
    else:
        rep["verdict"], rep["status"] = "INCONCLUSIVE", INCONCLUSIVE
    return rep


def lemma_twistfixed_check(cover: Cover, sigma: Sequence[TopType] = (NONSEP,), budget: int = DEFAULT_BUDGET,
                           seed: int = 0, window: int = DEFAULT_WINDOW, keep_bases: bool = False) -> dict:
    sat = saturate(cover, sigma, budget, seed, window)
    mats = [twist_matrix(cover.lat, d) for d in sat.data]
    F = fixed_space(mats, cover.rank)
    Pp = symplin.perp(sat.span, cover.lat.gram)
    if not Pp.issubspace(F):
        raise ImplementationFailure("perp of the sampled span is not fixed by the sampled twists")
    if sat.full and F.dim:
        raise ImplementationFailure("full span but nonzero twist-fixed space")
    equal = F.basis == Pp.basis
    rep = _base_report("twistfixed", cover, sigma, budget, seed, window)
    rep.update(sat.report_fields())
    rep.update({"dim_fixed": F.dim, "dim_perp": Pp.dim, "perp_in_fixed": True, "equal": equal,
                "matrix_hashes": [matrix_hash(M) for M in mats[:20]],
                "curves": [d.to_json() for d in sat.data[:20]]})
    if keep_bases:
        rep["fixed_basis"] = F.integer_rows()
        rep["perp_basis"] = Pp.integer_rows()
    if equal and sat.saturated:
        rep["verdict"], rep["status"] = "EQUAL", TRUE
    else:
        rep["verdict"], rep["status"] = "INCONCLUSIVE", INCONCLUSIVE
    return rep


def _schreier_loops(rep: PermutationRep, gens: Sequence[Word]) -> list[tuple[int, Word]]:
    """Closed based loops generating each orbit's stabilizer of the subgroup <gens>.

    Returns (base sheet, word) pairs: one Schreier generator
    ``path(s) * x * path(x(s))^-1`` per orbit sheet s and generator x.
    """
    perms = [rep.perm_of(x) for x in gens]
    inv_perms = []
    for p in perms:
        q = [0] * len(p)
        for i, j in enumerate(p):
            q[j] = i
        inv_perms.append(q)
    seen: dict[int, Word] = {}
    loops = []
    for root in range(rep.degree):
        if root in seen:
            continue
        seen[root] = Word(())
        order = [root]
        queue = deque([root])
        while queue:
            s = queue.popleft()
            for x, p, q in zip(gens, perms, inv_perms):
                for t, step in ((p[s], x), (q[s], x.inverse())):
                    if t not in seen:
                        seen[t] = seen[s] * step
                        order.append(t)
                        queue.append(t)
        for s in order:
            for x, p in zip(gens, perms):
                w = seen[s] * x * seen[p[s]].inverse()
                if w:
                    loops.append((root, w))
    return loops


def piece_span(cover: Cover, pants: PantsData) -> tuple[symplin.SpanAccumulator, int]:
    """Span of the preimages of the pants pieces and the pants curves."""
    acc = symplin.SpanAccumulator(cover.rank)
    count = 0
    for piece in pants.pieces:
        for root, w in _schreier_loops(cover.rep, piece):
            m, cls = lift_class(cover.cx, cover.lat, w, root)
            if m != 1:
                raise ImplementationFailure("Schreier word does not close up on its base sheet")
            acc.add([cls])
            count += 1
    for c in pants.curves:
        acc.add(lifted_twist_data(cover.cx, cover.lat, c).classes())
        count += 1
    return acc, count


def pants_span_check(cover: Cover, pants: PantsData, budget: int = DEFAULT_BUDGET, seed: int = 0,
                     window: int = DEFAULT_WINDOW) -> dict:
    sigma = sorted({c.ttype for c in pants.curves}, key=str)
    U, n_loops = piece_span(cover, pants)
    U_rank = U.rank
    sat = saturate(cover, sigma, budget, seed, window)
    total = U.merge(_acc_from(sat.span, cover.rank))
    rep = _base_report("pants", cover, sigma, budget, seed, window)
    rep.update(sat.report_fields())
    rep.update({"pants_curves": [str(c.word) for c in pants.curves],
                "pants_pieces": [[str(w) for w in p] for p in pants.pieces],
                "piece_loops": n_loops, "rank_U": U_rank, "deficit_U": cover.rank - U_rank,
                "rank_W_plus_U": total.rank})
    if total.rank == cover.rank:
        rep["verdict"], rep["status"] = "SPANS", TRUE
    else:
        rep["verdict"], rep["status"] = "INCONCLUSIVE", INCONCLUSIVE
    return rep


def _acc_from(W: symplin.RatSubspace, ambient: int) -> symplin.SpanAccumulator:
    acc = symplin.SpanAccumulator(ambient)
    acc.add(W.integer_rows())
    return acc


def orbit_check(cover: Cover, sigma: Sequence[TopType] = (NONSEP,), budget: int = DEFAULT_BUDGET,
                seed: int = 0, window: int = DEFAULT_WINDOW, vectors: int = 50, n_max: int = 100) -> dict:
    """For random nonzero v in the sampled span, find a sampled curve whose lifted twist moves v."""
    sat = saturate(cover, sigma, budget, seed, window)
    basis = sat.span.integer_rows()
    rng = random.Random(seed)
    results = []
    inconclusive = 0
    for _ in range(vectors if basis else 0):
        coeffs = [0] * len(basis)
        while not any(coeffs):
            coeffs = [rng.randint(-3, 3) for _ in basis]
        v = [sum(c * row[i] for c, row in zip(coeffs, basis)) for i in range(cover.rank)]
        found = None
        for d in sat.data:
            w, tag = orbit_witness(cover.lat, d, v)
            if tag == "INFINITE":
                if not orbit_points_distinct(v, w, n_max):
                    raise ImplementationFailure("nonzero w but v + n w repeats")
                found = str(d.curve.word)
                break
        if found is None:
            inconclusive += 1
        results.append({"coeffs": coeffs, "witness_curve": found, "verdict": "INFINITE" if found else "INCONCLUSIVE"})
    rep = _base_report("orbit", cover, sigma, budget, seed, window)
    rep.update(sat.report_fields())
    rep.update({"vectors": len(results), "inconclusive": inconclusive, "n_max": n_max, "results": results})
    ok = results and inconclusive == 0
    rep["verdict"], rep["status"] = ("INFINITE", TRUE) if ok else ("INCONCLUSIVE", INCONCLUSIVE)
    return rep

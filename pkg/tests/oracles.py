"""Independent reference computations used to freeze expected values."""

from fractions import Fraction

import numpy as np
import sympy

from surfcover.covering import lift_closed_chain
from surfcover.surface_model import Word


def euler_count(rep):
    """V - E + F straight from the permutations: one vertex and one polygon per sheet."""
    N = rep.degree
    g, n = rep.st.genus, rep.st.marked
    caps = 0
    for j in range(n):
        p = rep.perms[2 * g + j]
        seen = set()
        for s in range(N):
            if s not in seen:
                caps += 1
                while s not in seen:
                    seen.add(s)
                    s = p[s]
    return N - (2 * g + n) * N + N + caps


def sympy_rank(rows, ncols):
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()


def homology_rank_sympy(cx):
    """b_1 = dim ker d1 - rank d2 over Q, with sympy doing the elimination."""
    d1, d2 = cx.boundary_matrices()
    r1 = sympy.Matrix(d1).rank()
    r2 = sympy.Matrix(d2).rank()
    return cx.n_edges - r1 - r2


def sympy_perp(rows, gram):
    """Kernel of the functionals h -> omega(h, w) via sympy."""
    G = sympy.Matrix(gram)
    if not rows:
        return sympy.eye(G.shape[0]).tolist()
    A = sympy.Matrix(rows) * G.T
    return [list(v.T) for v in A.nullspace()]


def rref_sympy(rows, ncols):
    if not rows:
        return ()
    M, _ = sympy.Matrix(rows).rref()
    out = []
    for i in range(M.rows):
        r = [Fraction(int(x.p), int(x.q)) for x in M.row(i)]
        if any(r):
            out.append(tuple(r))
    return tuple(out)


def lifted_automorphism_matrix(cover, f):
    """Action of a base automorphism on H_1 of the cover, from based basis loops.

    Only valid when f fixes the basepoint sheet's stabilizer, which holds for
    powers T^d of twists as used here.
    """
    cx, lat = cover.cx, cover.lat
    cols = []
    for w in lat.basis_words:
        fw = f(w)
        if cx.rep.act(fw, 0) != 0:
            raise AssertionError("automorphism image does not close up on sheet 0")
        cols.append(lat.classify_chain(lift_closed_chain(cx, fw, 0)))
    return np.array(cols, dtype=np.int64).T


def power(f, d):
    out = f
    for _ in range(d - 1):
        out = out.then(f)
    return out


def collect(params, letters):
    """Normal form of a product of x_i^{+-1} by bubble-sorting letters.

    Swapping x_j^s x_i^t (j > i) to x_i^t x_j^s leaves the central factor
    [x_j^s, x_i^t] = s t (e_j ^ e_i) = -s t (e_i ^ e_j).
    """
    letters = list(letters)
    n = params.n
    central = {(i, j): 0 for i in range(n) for j in range(i + 1, n)}
    changed = True
    while changed:
        changed = False
        for k in range(len(letters) - 1):
            (j, s), (i, t) = letters[k], letters[k + 1]
            if j > i:
                central[(i, j)] -= s * t
                letters[k], letters[k + 1] = letters[k + 1], letters[k]
                changed = True
    a = [0] * n
    for i, s in letters:
        a[i] += s
    return tuple(a), tuple(central[p] % params.ell_hat for p in params.pairs)


def expand(u):
    """Letters x_1^{a_1} ... x_n^{a_n} followed by the central part written as commutators."""
    letters = []
    for i, ai in enumerate(u.a):
        letters += [(i, 1 if ai > 0 else -1)] * abs(ai)
    for (i, j), c in zip(u.params.pairs, u.c):
        # [x_i, x_j] = x_i x_j x_i^-1 x_j^-1 carries e_i ^ e_j
        letters += [(i, 1), (j, 1), (i, -1), (j, -1)] * c
    return letters

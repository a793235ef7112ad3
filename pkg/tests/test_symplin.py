import math

import numpy as np
from hypothesis import given, settings, strategies as st

from surfcover import symplin
from surfcover.symplin import RatSubspace, SpanAccumulator, span_Q, span_Z

from oracles import rref_sympy, sympy_perp, sympy_rank

J4 = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
A1, B1, A2, B2 = (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)

vec4 = st.lists(st.integers(-4, 4), min_size=4, max_size=4)
rows4 = st.lists(vec4, max_size=5)


def test_span_examples():
    assert span_Q([], 3).dim == 0
    assert span_Q([(1, 2), (2, 4)], 2).dim == 1
    assert span_Z([(1, 0), (0, 2)], 2).as_lists() == [[1, 0], [0, 2]]


def test_index_examples():
    full = symplin.IntLattice.full(2)
    assert symplin.index(span_Z([(2, 0), (0, 1)], 2), full) == 2
    assert symplin.index(span_Z([(1, 0)], 2), full) == math.inf


def test_member_examples():
    L = span_Z([(2, 0)], 2)
    assert not symplin.member_Z(L, (1, 0))
    assert symplin.member_Z(L, (0, 0))
    assert symplin.member_Z(L, (-4, 0))


def test_perp_examples():
    assert symplin.perp(RatSubspace.zero(4), J4).dim == 4
    assert symplin.perp(RatSubspace.full(4), J4).dim == 0
    P = symplin.perp(span_Q([A1], 4), J4)
    for v in (A1, A2, B2):
        assert P.contains(v)
    assert not P.contains(B1)


def test_symplectic_Q_examples():
    assert symplin.is_symplectic_Q(span_Q([A1, B1], 4), J4)
    assert not symplin.is_symplectic_Q(span_Q([A1, A2], 4), J4)
    assert symplin.is_symplectic_Q(RatSubspace.zero(4), J4)
    assert not symplin.is_symplectic_Q(span_Q([A1], 4), J4)


def test_symplectic_Z_examples():
    assert symplin.is_symplectic_Z(symplin.IntLattice.full(4), J4)
    assert not symplin.is_symplectic_Z(span_Z([(2, 0, 0, 0), B1], 4), J4)
    # omega(a1 + a2, b1) = 1
    assert symplin.is_symplectic_Z(span_Z([(1, 0, 1, 0), B1], 4), J4)


def test_full_rank_symplectic_lattice_has_index_one():
    L = span_Z([(1, 0, 1, 0), B1, A2, (0, -1, 0, 1)], 4)
    assert L.rank == 4 and symplin.is_symplectic_Z(L, J4)
    assert symplin.index(L, symplin.IntLattice.full(4)) == 1


def test_det_and_inverse():
    assert symplin.det(J4) == 1
    inv = symplin.int_inverse(J4)
    assert (np.array(inv) @ np.array(J4) == np.eye(4, dtype=int)).all()


def test_smith_invariants():
    assert symplin.smith_invariants([[2, 0], [0, 3]], 2) == [1, 6]


def test_exact_matmul_guards_overflow():
    big = np.array([[2 ** 40]], dtype=np.int64)
    out = symplin.exact_matmul(big, big)
    assert int(out[0, 0]) == 2 ** 80


@given(rows4)
def test_rref_matches_sympy(rows):
    assert span_Q(rows, 4).basis == rref_sympy(rows, 4)


@given(rows4)
def test_rank_matches_sympy(rows):
    assert span_Q(rows, 4).dim == sympy_rank(rows, 4)


@given(rows4)
def test_perp_matches_sympy_and_is_involution(rows):
    W = span_Q(rows, 4)
    P = symplin.perp(W, J4)
    assert P == span_Q(sympy_perp(W.integer_rows(), J4), 4)
    assert W.dim + P.dim == 4
    assert symplin.perp(P, J4) == W


@given(rows4, rows4)
def test_span_order_insensitive_and_idempotent(r, s):
    assert span_Q(r + s, 4) == span_Q(s + r, 4)
    W = span_Q(r, 4)
    assert W.add(W.integer_rows()) == W


@given(rows4)
def test_symplectic_iff_splits(rows):
    W = span_Q(rows, 4)
    assert symplin.is_symplectic_Q(W, J4) == symplin.splits_with_perp(W, J4)


@settings(max_examples=50)
@given(st.lists(rows4, min_size=1, max_size=4))
def test_accumulator_matches_batch_span(batches):
    acc = SpanAccumulator(4)
    ranks = [acc.add(b) for b in batches]
    assert ranks == sorted(ranks)
    assert acc.subspace() == span_Q([v for b in batches for v in b], 4)
    other = SpanAccumulator(4)
    other.add(batches[0])
    assert acc.merge(other).subspace() == other.merge(acc).subspace() == acc.subspace()


@given(rows4, vec4)
def test_member_Z_sums_and_extension(rows, v):
    L = span_Z(rows, 4)
    total = [sum(col) for col in zip(*rows)] if rows else [0, 0, 0, 0]
    assert symplin.member_Z(L, total)
    assert symplin.member_Z(L, v) == (span_Z(rows + [v], 4).as_lists() == L.as_lists())


@given(rows4, rows4)
def test_restrict_kernel_is_intersection(rows, eqs):
    W = span_Q(rows, 4)
    K = symplin.restrict_kernel(W, eqs)
    assert K.issubspace(W)
    if eqs:
        assert K.issubspace(symplin.nullspace_Q(eqs, 4))
        if W.dim:
            image = (np.array(eqs, dtype=object) @ np.array(W.integer_rows(), dtype=object).T).tolist()
            assert K.dim == W.dim - sympy_rank(image, W.dim)

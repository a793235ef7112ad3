import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from surfcover import symplin
from surfcover.covering import (
    CoverError,
    PermutationRep,
    abelian_rep,
    build_complex,
    cover_summary,
    cycles,
    deck_matrix,
    homology_lattice,
    identity_rep,
    lift_class,
    mod_ell_rep,
    random_rep,
    rep_from_config,
    symplin_boundary_check,
)
from surfcover.surface_model import SurfaceType, Word, base_class

from oracles import euler_count, homology_rank_sympy

J4 = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])


def built(rep):
    cx = build_complex(rep)
    return cx, homology_lattice(cx)


def test_mod_ell_degrees():
    assert mod_ell_rep(2, 2).degree == 16
    assert mod_ell_rep(2, 3).degree == 81


def test_mod_ell_g1_ell3_translation_cycles():
    rep = mod_ell_rep(1, 3)
    assert rep.degree == 9
    assert sorted(len(c) for c in cycles(rep.perm_of(Word.parse("a1")))) == [3, 3, 3]


def test_abelian_matches_mod_ell():
    rep = abelian_rep(1, [2, 2], {"a1": [1, 0], "b1": [0, 1]})
    assert rep.perms == mod_ell_rep(1, 2).perms


def test_trivial_group_gives_identity_cover():
    assert abelian_rep(2, [], {}).degree == 1


def test_cyclic_cover_permutations(cyclic3):
    rep = cyclic3.rep
    assert rep.perm_of(Word.parse("b1")) == (0, 1, 2)
    assert [len(c) for c in cycles(rep.perm_of(Word.parse("a1")))] == [3]


def test_rejects_non_transitive():
    with pytest.raises(CoverError, match="cover disconnected"):
        rep_from_config({"genus": 1, "degree": 2, "perm": {"a1": [1, 2], "b1": [1, 2]}})


def test_rejects_non_generating_targets():
    with pytest.raises(CoverError, match="cover disconnected"):
        abelian_rep(2, [3], {})


def test_rejects_relator_violation():
    with pytest.raises(CoverError):
        # a1 = (12), b1 = (23): the commutator is a 3-cycle, not the identity
        rep_from_config({"genus": 1, "degree": 3, "perm": {"a1": [2, 1, 3], "b1": [1, 3, 2]}})


def test_rejects_non_permutation():
    with pytest.raises(CoverError):
        rep_from_config({"genus": 1, "degree": 2, "perm": {"a1": [1, 1], "b1": [2, 1]}})


def test_identity_cover_cells():
    cx, lat = built(identity_rep(SurfaceType(2, 0)))
    assert (cx.n_vertices, cx.n_edges, cx.n_faces) == (1, 4, 1)
    assert cx.euler_characteristic == -2
    assert lat.rank == 4
    assert np.array_equal(lat.gram, J4)


def test_identity_cover_lift_is_base_class():
    cx, lat = built(identity_rep(SurfaceType(2, 0)))
    for text in ("a1", "b2", "a1 b1 A2", "a2 a2 B1"):
        w = Word.parse(text)
        m, cls = lift_class(cx, lat, w, 0)
        assert m == 1 and tuple(cls) == base_class(w, SurfaceType(2, 0))


def test_sigma2_numbers(sigma2):
    assert sigma2.cx.euler_characteristic == -32
    assert sigma2.cx.cover_genus == 17
    assert sigma2.rank == 34
    assert abs(symplin.det(sigma2.lat.gram)) == 1


def test_sigma3_numbers(sigma3):
    assert sigma3.cx.euler_characteristic == -162
    assert sigma3.rank == 164


def test_branched_cover_genus0_three_points():
    perm = [2, 3, 1]
    rep = rep_from_config({"genus": 0, "marked": 3, "degree": 3, "perm": {"z1": perm, "z2": perm, "z3": perm}})
    cx, lat = built(rep)
    assert cx.euler_characteristic == euler_count(rep) == 0
    assert lat.rank == 2
    assert abs(symplin.det(lat.gram)) == 1


def test_lift_class_mod3(sigma3):
    for s in (0, 5, 80):
        m, _ = lift_class(sigma3.cx, sigma3.lat, Word.parse("a1"), s)
        assert m == 3


def test_cyclic_lift_classes(cyclic3):
    cx, lat = cyclic3.cx, cyclic3.lat
    beta = [lift_class(cx, lat, Word.parse("b1"), s) for s in range(3)]
    assert all(m == 1 for m, _ in beta)
    # three disjoint lifts, all homologous to each other
    assert len({tuple(c) for _, c in beta}) == 1 and any(beta[0][1])
    m, alpha = lift_class(cx, lat, Word.parse("a1"), 0)
    assert m == 3 and any(alpha)


def test_lift_additive_on_closed_pieces(sigma2):
    u, v = Word.parse("a1 a1"), Word.parse("b2 a1 b2 A1")
    for s in range(sigma2.rep.degree):
        (mu, cu), (mv, cv) = (lift_class(sigma2.cx, sigma2.lat, w, s) for w in (u, v))
        m, c = lift_class(sigma2.cx, sigma2.lat, u * v, s)
        assert mu == mv == m == 1
        assert np.array_equal(c, cu + cv)


def test_conjugate_lift_moves_sheet(sigma3):
    cx, lat = sigma3.cx, sigma3.lat
    w, t = Word.parse("a1 b2"), Word.parse("b1 a2 a2")
    for s in (0, 7, 40):
        m1, c1 = lift_class(cx, lat, t * w * t.inverse(), s)
        m2, c2 = lift_class(cx, lat, w, cx.rep.act(t, s))
        assert m1 == m2 and np.array_equal(c1, c2)


def test_deck_matrices(sigma2):
    lat, G = sigma2.lat, sigma2.lat.gram
    assert np.array_equal(deck_matrix(sigma2.cx, lat, (0, 0, 0, 0)), np.eye(lat.rank, dtype=np.int64))
    for elt in ((1, 0, 0, 0), (0, 1, 1, 0), (1, 1, 1, 1)):
        D = deck_matrix(sigma2.cx, lat, elt)
        assert np.array_equal(D.T @ G @ D, G)
        assert np.array_equal(D @ D, np.eye(lat.rank, dtype=np.int64))


def test_deck_order_divides_group_order(cyclic3):
    D = deck_matrix(cyclic3.cx, cyclic3.lat, (1,))
    assert np.array_equal(np.linalg.matrix_power(D, 3), np.eye(cyclic3.rank, dtype=np.int64))
    assert not np.array_equal(D, np.eye(cyclic3.rank, dtype=np.int64))


def test_rank_matches_sympy_homology(sigma2):
    assert homology_rank_sympy(sigma2.cx) == sigma2.rank


def test_smith_form_has_no_torsion(sigma2):
    rank, torsion = symplin_boundary_check(sigma2.cx)
    assert rank == 34 and torsion == []


def test_summary_and_json_roundtrip(sigma2):
    summary = cover_summary(sigma2.cx, sigma2.lat)
    assert summary["riemann_hurwitz_ok"] and summary["cover_genus"] == 17
    again = rep_from_config(json.loads(json.dumps(sigma2.rep.to_json())))
    assert again.perms == sigma2.rep.perms


def test_traced_faces_match_cells(sigma2):
    assert len(sigma2.cx.traced_faces()) == sigma2.cx.n_faces


def check_cover(rep):
    cx, lat = built(rep)
    G = np.asarray(lat.gram)
    assert cx.euler_characteristic == euler_count(rep) == cx.riemann_hurwitz()
    assert cx.euler_characteristic % 2 == 0
    assert lat.rank == 2 - cx.euler_characteristic
    assert np.array_equal(G, -G.T) and not np.any(np.diag(G))
    assert abs(symplin.det(G)) == 1
    assert len(cx.traced_faces()) == cx.n_faces


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 7), st.integers(0, 10 ** 6))
def test_random_closed_covers(g, n, seed):
    check_cover(random_rep(SurfaceType(g, 0), n, seed))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2), st.integers(1, 3), st.integers(2, 6), st.integers(0, 10 ** 6))
def test_random_branched_covers(g, marked, n, seed):
    if 2 * g + marked < 3:
        return
    check_cover(random_rep(SurfaceType(g, marked), n, seed))


def test_random_rep_is_deterministic():
    st2 = SurfaceType(2, 0)
    assert random_rep(st2, 6, 9).perms == random_rep(st2, 6, 9).perms


def test_explicit_rep_validation():
    rep = PermutationRep(SurfaceType(1, 0), 2, ((1, 0), (0, 1)))
    assert rep.is_transitive()

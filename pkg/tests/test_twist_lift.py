import math

import numpy as np
import pytest

from surfcover import symplin
from surfcover.covering import deck_matrix
from surfcover.curves import NONSEP, SEP1, SccWord, sample_curves, twist_generators
from surfcover.surface_model import SurfaceType, Word
from surfcover.twist_lift import (
    fixed_space,
    is_symplectic_matrix,
    is_unipotent_order2,
    lcm_and_multiplicities,
    lifted_twist_data,
    matrix_hash,
    orbit_points_distinct,
    orbit_witness,
    twist_matrix,
)

from oracles import lifted_automorphism_matrix, power

CURVE_OF = {"T_a1": "a1", "T_b1": "b1", "T_a2": "a2", "T_b2": "b2", "T_c1": "a1 a2"}


def scc(text, ttype=NONSEP):
    return SccWord(Word.parse(text), ttype)


def test_lcm_arithmetic():
    assert lcm_and_multiplicities([1, 2, 2]) == (2, (2, 1, 1))
    assert lcm_and_multiplicities([1]) == (1, (1,))


def test_identity_cover_data(trivial2):
    d = lifted_twist_data(trivial2.cx, trivial2.lat, scc("a1"))
    assert d.degrees == (1,) and d.d == 1 and d.e == (1,)


def test_identity_cover_twist_on_b1(trivial2):
    d = lifted_twist_data(trivial2.cx, trivial2.lat, scc("a1"))
    M = twist_matrix(trivial2.lat, d)
    assert list(M @ np.array([0, 1, 0, 0])) == [-1, 1, 0, 0]
    assert trivial2.lat.omega([0, 1, 0, 0], [1, 0, 0, 0]) == -1


def test_sigma3_a1_components(sigma3):
    d = lifted_twist_data(sigma3.cx, sigma3.lat, scc("a1"))
    assert len(d.components) == 27
    assert set(d.degrees) == {3} and d.d == 3 and set(d.e) == {1}


def test_sigma2_a1_symplectic(sigma2):
    M = twist_matrix(sigma2.lat, lifted_twist_data(sigma2.cx, sigma2.lat, scc("a1")))
    assert is_symplectic_matrix(M, sigma2.lat.gram)


@pytest.mark.parametrize("which", ["trivial2", "sigma2", "cyclic3", "sigma3"])
def test_matches_lifted_automorphism(which, request):
    cover = request.getfixturevalue(which)
    for T in twist_generators(SurfaceType(2, 0)):
        data = lifted_twist_data(cover.cx, cover.lat, scc(CURVE_OF[T.name]))
        M = twist_matrix(cover.lat, data)
        assert np.array_equal(M, lifted_automorphism_matrix(cover, power(T, data.d))), T.name


def check_data(cover, data):
    N = cover.rep.degree
    assert sum(data.degrees) == N
    assert data.d == math.lcm(*data.degrees)
    assert all(e * dj == data.d for e, dj in zip(data.e, data.degrees))
    G = cover.lat.gram
    classes = [np.array(c) for c in data.classes()]
    for u in classes:
        for v in classes:
            assert u @ G @ v == 0
    M = twist_matrix(cover.lat, data)
    assert is_symplectic_matrix(M, G)
    assert is_unipotent_order2(M)
    for c in classes:
        assert np.array_equal(M @ c, c)


def test_component_invariants_on_samples(sigma2, cyclic3, random_covers):
    checked = 0
    for cover in [sigma2, cyclic3] + random_covers:
        st_ = cover.rep.st
        for s in sample_curves(st_, NONSEP, 20, 3) + sample_curves(st_, SEP1, 5, 4):
            check_data(cover, lifted_twist_data(cover.cx, cover.lat, s))
            checked += 1
    assert checked >= 100


def test_deck_equivariance(sigma2):
    for text in ("a1", "b1 a2", "a1 a2"):
        M = twist_matrix(sigma2.lat, lifted_twist_data(sigma2.cx, sigma2.lat, scc(text)))
        for elt in ((1, 0, 0, 0), (0, 1, 0, 1)):
            D = deck_matrix(sigma2.cx, sigma2.lat, elt)
            assert np.array_equal(D @ M, M @ D)


def test_fixed_space_examples(trivial2):
    assert fixed_space([], 4).dim == 4
    mats = [twist_matrix(trivial2.lat, lifted_twist_data(trivial2.cx, trivial2.lat, scc(t)))
            for t in ("a1", "b1", "a2", "b2")]
    assert fixed_space(mats).dim == 0
    M = mats[0]
    assert fixed_space([M]).dim == 4 - symplin.rank((M - np.eye(4, dtype=np.int64)).tolist())


def test_fixed_space_rank_nullity(sigma2):
    for t in ("a1", "a1 b2", "b1 b1 a2"):
        M = twist_matrix(sigma2.lat, lifted_twist_data(sigma2.cx, sigma2.lat, scc(t)))
        D = (M - np.eye(34, dtype=np.int64)).tolist()
        assert fixed_space([M]).dim == 34 - symplin.rank(D)


def test_orbit_witness_examples(trivial2):
    d = lifted_twist_data(trivial2.cx, trivial2.lat, scc("a1"))
    w, tag = orbit_witness(trivial2.lat, d, [0, 1, 0, 0])
    assert w == (-1, 0, 0, 0) and tag == "INFINITE"
    assert orbit_points_distinct([0, 1, 0, 0], w)
    assert orbit_witness(trivial2.lat, d, [1, 0, 0, 0])[1] == "FIXED"
    assert orbit_witness(trivial2.lat, d, [0, 0, 0, 0]) == ((0, 0, 0, 0), "FIXED")


def test_orbit_witness_component_is_fixed(sigma2):
    d = lifted_twist_data(sigma2.cx, sigma2.lat, scc("a1 b2"))
    assert orbit_witness(sigma2.lat, d, d.components[0].cls)[1] == "FIXED"


def test_matrix_hash_stable(sigma2):
    d = lifted_twist_data(sigma2.cx, sigma2.lat, scc("a1"))
    assert matrix_hash(twist_matrix(sigma2.lat, d)) == matrix_hash(twist_matrix(sigma2.lat, d))

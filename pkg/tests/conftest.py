import pytest

from surfcover.covering import abelian_rep, identity_rep, mod_ell_rep, random_rep
from surfcover.spancheck import Cover
from surfcover.surface_model import SurfaceType


@pytest.fixture(scope="session")
def trivial2():
    return Cover.from_rep(identity_rep(SurfaceType(2, 0)), "identity(g=2)")


@pytest.fixture(scope="session")
def sigma2():
    return Cover.from_rep(mod_ell_rep(2, 2))


@pytest.fixture(scope="session")
def sigma3():
    return Cover.from_rep(mod_ell_rep(2, 3))


@pytest.fixture(scope="session")
def cyclic3():
    # degree-3 cyclic cover with a1 -> 1 and every other generator trivial
    return Cover.from_rep(abelian_rep(2, [3], {"a1": [1]}, label="cyclic3"))


@pytest.fixture(scope="session")
def random_covers():
    specs = [(2, 4, 1), (2, 6, 3), (3, 8, 2), (2, 8, 11)]
    return [Cover.from_rep(random_rep(SurfaceType(g, 0), n, s), f"random(g={g},N={n},seed={s})")
            for g, n, s in specs]

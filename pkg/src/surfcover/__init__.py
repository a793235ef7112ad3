"""Finite covers of surfaces, lifted Dehn twists and the homology they span."""

from .covering import (
    CoverComplex,
    CoverError,
    H1Lattice,
    PermutationRep,
    abelian_rep,
    build_complex,
    homology_lattice,
    identity_rep,
    lift_class,
    mod_ell_rep,
    random_rep,
    rep_from_config,
)
from .curves import NONSEP, SEP1, SccWord, TopType, sample_curves, seed_curves, standard_pants, twist_generators
from .spancheck import Cover
from .surface_model import Letter, SurfaceType, Word, base_class, surface_relator
from .twist_lift import fixed_space, lifted_twist_data, orbit_witness, twist_matrix

__all__ = [
    "Cover", "CoverComplex", "CoverError", "H1Lattice", "Letter", "NONSEP", "PermutationRep", "SEP1",
    "SccWord", "SurfaceType", "TopType", "Word", "abelian_rep", "base_class", "build_complex",
    "fixed_space", "homology_lattice", "identity_rep", "lift_class", "lifted_twist_data", "mod_ell_rep",
    "orbit_witness", "random_rep", "rep_from_config", "sample_curves", "seed_curves", "standard_pants",
    "surface_relator", "twist_generators", "twist_matrix",
]

"""Arithmetic and Zariski-dense subgroups of SL(n,Z) and Sp(n,Z), n > 2."""

from .families import (LatticeFamily, check_in_lattice, el_level,
                       elementary_generators, gamma_generators,
                       reduce_mats_mod)
from .levels import (ArithGroupDesc, DEFAULT_PRIME_BOUND, delta, describe,
                     full_lattice_desc, index_in_gamma, is_normal,
                     is_subgroup, is_subnormal, lattice_image_mod,
                     level_max_pcs, level_search_primes, membership,
                     normal_closure_desc, normalizer_desc,
                     primes_for_dense, subgroup_image_mod)
from .density import adjoint_matrices, is_dense, lie_algebra_basis
from .orbits import (OrbitWitness, orbit_gamma, orbit_subgroup,
                     stabilizer_gamma, vec_gcd)

__all__ = [
    "LatticeFamily", "check_in_lattice", "el_level",
    "elementary_generators", "gamma_generators", "reduce_mats_mod",
    "ArithGroupDesc", "DEFAULT_PRIME_BOUND", "delta", "describe",
    "full_lattice_desc", "index_in_gamma", "is_normal", "is_subgroup",
    "is_subnormal", "lattice_image_mod", "level_max_pcs",
    "level_search_primes", "membership", "normal_closure_desc",
    "normalizer_desc", "primes_for_dense", "subgroup_image_mod",
    "adjoint_matrices", "is_dense", "lie_algebra_basis",
    "OrbitWitness", "orbit_gamma", "orbit_subgroup", "stabilizer_gamma",
    "vec_gcd",
]

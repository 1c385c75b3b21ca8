"""Exact arithmetic kernel: scalars, polynomials, matrices, words, groups."""

from .scalars import (QQ, ZZ, Domain, FiniteField, FunctionField, Integers,
                      NumberField, Rationals, Zmod, is_prime, lcm_int)
from .matrices import (Echelon, Mat, commutator, min_poly, nullspace,
                       solve_combination, transvection)
from .words import (evaluate_word, free_reduce, word, word_inv, word_mul,
                    word_pow)
from .groups import GeneratedGroup, bfs_enumerate
from . import polys, factor, mpoly

__all__ = [
    "QQ", "ZZ", "Domain", "FiniteField", "FunctionField", "Integers",
    "NumberField", "Rationals", "Zmod", "is_prime", "lcm_int",
    "Echelon", "Mat", "commutator", "min_poly", "nullspace",
    "solve_combination", "transvection",
    "evaluate_word", "free_reduce", "word", "word_inv", "word_mul",
    "word_pow", "GeneratedGroup", "bfs_enumerate", "polys", "factor",
    "mpoly",
]

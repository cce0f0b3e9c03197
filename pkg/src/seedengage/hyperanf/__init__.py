from .anf import DEFAULT_PRECISION, AnvTable, exact_neighborhood_function, hyperanf
from .fca import select_fca
from .hll import DEFAULT_HASH_SEED, HllCounter, hll_add, hll_union

__all__ = [
    "AnvTable",
    "DEFAULT_HASH_SEED",
    "DEFAULT_PRECISION",
    "HllCounter",
    "exact_neighborhood_function",
    "hll_add",
    "hll_union",
    "hyperanf",
    "select_fca",
]

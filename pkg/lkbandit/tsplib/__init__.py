"""TSPLIB instances, costs and file formats."""

from .instance import Instance, WEIGHT_KINDS, MATRIX_CACHE_LIMIT, tour_length, is_permutation
from .parser import (
    parse_instance, load_instance, parse_tour, read_tour, write_tour,
    RegistryEntry, parse_registry, load_registry, lookup_optimum,
)


def cost(inst: Instance, i: int, j: int) -> int:
    """Integer TSPLIB distance between cities i and j (0-based)."""
    return inst.cost(i, j)


__all__ = [
    'Instance', 'WEIGHT_KINDS', 'MATRIX_CACHE_LIMIT', 'tour_length', 'is_permutation', 'cost',
    'parse_instance', 'load_instance', 'parse_tour', 'read_tour', 'write_tour',
    'RegistryEntry', 'parse_registry', 'load_registry', 'lookup_optimum',
]

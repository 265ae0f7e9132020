"""Exhaustive reference computations for small instances."""

import itertools
import logging
from typing import List, Tuple

import numpy as np

from lkbandit.errors import UsageError
from lkbandit.one_tree import choose_special_node, penalized_cost
from lkbandit.tsplib import Instance

logger = logging.getLogger(__name__)

ORACLE_MAX_CITIES = 12


def brute_force_optimum(inst: Instance) -> Tuple[int, List[int]]:
    """Shortest tour by enumerating every cyclic order that starts at city 0.

    Each cycle is seen in one direction only (second city < last city).

    Returns:
        (length, order) with the lexicographically first optimal order.

    Raises:
        UsageError: above ORACLE_MAX_CITIES cities.
    """
    n = inst.n
    if n > ORACLE_MAX_CITIES:
        raise UsageError(f"Exhaustive search is limited to {ORACLE_MAX_CITIES} cities, {inst.name} has {n}")

    dist = np.asarray(inst.distance_matrix)
    prefix_len = min(2, n - 2)
    best_length, best_order = None, None

    for prefix in itertools.permutations(range(1, n), prefix_len):
        rest = [c for c in range(1, n) if c not in prefix]
        tails = np.array(list(itertools.permutations(rest)), dtype=np.int64)
        perms = np.hstack([np.tile(np.array(prefix, dtype=np.int64), (len(tails), 1)), tails])
        perms = perms[perms[:, 0] < perms[:, -1]]
        if len(perms) == 0:
            continue
        lengths = (
            dist[0, perms[:, 0]]
            + dist[perms[:, :-1], perms[:, 1:]].sum(axis=1)
            + dist[perms[:, -1], 0]
        )
        idx = int(np.argmin(lengths))
        if best_length is None or lengths[idx] < best_length:
            best_length = int(lengths[idx])
            best_order = [0] + perms[idx].tolist()

    logger.debug(f"Exhaustive optimum of {inst.name}: {best_length}")
    return best_length, best_order


class _DisjointSet:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _one_tree_length(inst: Instance, pi: np.ndarray, special: int, forced: Tuple[int, int] = None) -> float:
    """Kruskal 1-tree length, optionally containing the edge ``forced``."""
    n = inst.n
    others = [v for v in range(n) if v != special]
    edges = sorted(
        (penalized_cost(inst, pi, a, b), a, b)
        for idx, a in enumerate(others) for b in others[idx + 1:]
    )
    special_costs = sorted((penalized_cost(inst, pi, special, v), v) for v in others)

    forest = _DisjointSet(n)
    length = 0.0
    if forced is not None and special not in forced:
        forest.union(*forced)
        length += penalized_cost(inst, pi, *forced)
    for cost, a, b in edges:
        if forest.union(a, b):
            length += cost

    if forced is not None and special in forced:
        partner = forced[1] if forced[0] == special else forced[0]
        cheapest_other = next(c for c, v in special_costs if v != partner)
        return length + penalized_cost(inst, pi, special, partner) + cheapest_other
    return length + special_costs[0][0] + special_costs[1][0]


def forced_edge_alpha(inst: Instance, pi: np.ndarray, i: int, j: int) -> float:
    """Growth of the minimum 1-tree when edge (i, j) must be part of it."""
    if i == j:
        raise UsageError(f"Edge ({i}, {j}) is a self-loop")
    pi = np.asarray(pi, dtype=np.float64)
    special = choose_special_node(inst, pi)
    return _one_tree_length(inst, pi, special, (i, j)) - _one_tree_length(inst, pi, special)


__all__ = ['brute_force_optimum', 'forced_edge_alpha', 'ORACLE_MAX_CITIES']

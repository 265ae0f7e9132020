"""Minimum 1-trees under penalized costs C(i,j) = d(i,j) + pi_i + pi_j."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components, minimum_spanning_tree

from lkbandit.tsplib import Instance

logger = logging.getLogger(__name__)

# Above this many cities the spanning tree is built on a nearest-neighbour graph
SPARSE_THRESHOLD = 3000
SPARSE_NEIGHBORS = 20

# Rows per block when scanning all penalized costs
ROW_BLOCK = 256


def zero_penalties(n: int) -> np.ndarray:
    """The initial penalty vector."""
    return np.zeros(n, dtype=np.float64)


def penalized_row(inst: Instance, pi: np.ndarray, i: int) -> np.ndarray:
    """C(i, j) for all j as floats, with C(i, i) = inf.

    ``pi[i] + pi`` is added as one term so C(i,j) == C(j,i) bit for bit.
    """
    row = inst.cost_row(i) + (pi[i] + pi)
    row[i] = np.inf
    return row


def penalized_cost(inst: Instance, pi: np.ndarray, i: int, j: int) -> float:
    return inst.dist(i, j) + (pi[i] + pi[j])


@dataclass(frozen=True, eq=False)
class OneTreeResult:
    """A minimum 1-tree.

    The spanning part covers every city but ``special_node``; ``parent`` and
    ``order`` describe it as a rooted tree (parents precede children in
    ``order``, the root and the special node have parent -1).
    """

    edges: Tuple[Tuple[int, int], ...]
    length: float
    degrees: np.ndarray
    bound: float
    special_node: int
    special_neighbors: Tuple[int, int]
    parent: np.ndarray
    parent_cost: np.ndarray
    order: np.ndarray

    @property
    def is_tour(self) -> bool:
        return bool(np.all(self.degrees == 2))

    def second_special_cost(self, inst: Instance, pi: np.ndarray) -> float:
        """Penalized cost of the more expensive 1-tree edge at the special node."""
        return penalized_cost(inst, pi, self.special_node, self.special_neighbors[1])


def _second_cheapest(inst: Instance, pi: np.ndarray) -> np.ndarray:
    n = inst.n
    second = np.empty(n, dtype=np.float64)
    dist = inst.distance_matrix
    if dist is None:
        for i in range(n):
            second[i] = np.partition(penalized_row(inst, pi, i), 1)[1]
        return second
    for start in range(0, n, ROW_BLOCK):
        rows = np.arange(start, min(start + ROW_BLOCK, n))
        block = dist[rows] + (pi[rows, None] + pi[None, :])
        block[np.arange(len(rows)), rows] = np.inf
        second[rows] = np.partition(block, 1, axis=1)[:, 1]
    return second


def choose_special_node(inst: Instance, pi: np.ndarray) -> int:
    """City whose second-cheapest penalized edge is largest, lowest index on ties."""
    return int(np.argmax(_second_cheapest(inst, pi)))


def _dense_spanning_tree(inst: Instance, pi: np.ndarray, special: int):
    """Prim's algorithm on the complete graph over all cities but ``special``."""
    n = inst.n
    in_tree = np.zeros(n, dtype=bool)
    in_tree[special] = True
    key = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    parent_cost = np.zeros(n, dtype=np.float64)
    order = np.empty(n - 1, dtype=np.int64)

    u = 1 if special == 0 else 0
    for step in range(n - 1):
        if step > 0:
            u = int(np.argmin(np.where(in_tree, np.inf, key)))
            parent_cost[u] = key[u]
        in_tree[u] = True
        order[step] = u
        row = penalized_row(inst, pi, u)
        better = ~in_tree & (row < key)
        key[better] = row[better]
        parent[better] = u
    parent[order[0]] = -1
    return parent, parent_cost, order


def _sparse_spanning_tree(inst: Instance, pi: np.ndarray, special: int):
    """Kruskal over each city's nearest penalized neighbours, or None if that graph is disconnected."""
    n = inst.n
    others = np.array([v for v in range(n) if v != special], dtype=np.int64)
    local = np.full(n, -1, dtype=np.int64)
    local[others] = np.arange(n - 1)

    k = min(SPARSE_NEIGHBORS, n - 2)
    heads, tails = [], []
    for v in others:
        row = penalized_row(inst, pi, v)
        row[special] = np.inf
        near = np.argpartition(row, k - 1)[:k]
        heads.append(np.full(k, local[v]))
        tails.append(local[near])
    heads = np.concatenate(heads)
    tails = np.concatenate(tails)
    lo, hi = np.minimum(heads, tails), np.maximum(heads, tails)
    pairs = np.unique(lo * (n - 1) + hi)
    lo, hi = pairs // (n - 1), pairs % (n - 1)

    weights = np.array([penalized_cost(inst, pi, others[a], others[b]) for a, b in zip(lo, hi)])
    # csgraph ignores explicit zeros, so shift every weight to be positive
    shifted = weights - weights.min() + 1.0
    graph = coo_matrix((shifted, (lo, hi)), shape=(n - 1, n - 1)).tocsr()

    n_components, _ = connected_components(graph, directed=False)
    if n_components > 1:
        logger.warning(f"Nearest-neighbour graph of {inst.name} has {n_components} components, using the full graph")
        return None

    tree = minimum_spanning_tree(graph)
    bfs_order, predecessors = breadth_first_order(tree, 0, directed=False, return_predecessors=True)

    parent = np.full(n, -1, dtype=np.int64)
    parent_cost = np.zeros(n, dtype=np.float64)
    order = others[bfs_order]
    for child_local in bfs_order[1:]:
        child = others[child_local]
        par = others[predecessors[child_local]]
        parent[child] = par
        parent_cost[child] = penalized_cost(inst, pi, child, par)
    return parent, parent_cost, order


def minimum_one_tree(inst: Instance, pi: Optional[np.ndarray] = None, sparse: Optional[bool] = None) -> OneTreeResult:
    """Build the minimum 1-tree for penalty vector ``pi``.

    Args:
        inst: The instance.
        pi: Penalties, zeros when omitted.
        sparse: Force or forbid the nearest-neighbour graph; by default it is
            used above SPARSE_THRESHOLD cities.

    Returns:
        The minimum 1-tree, its length under penalized costs and the bound
        length - 2 * sum(pi).
    """
    n = inst.n
    pi = zero_penalties(n) if pi is None else np.asarray(pi, dtype=np.float64)
    special = choose_special_node(inst, pi)

    built = None
    if sparse or (sparse is None and n > SPARSE_THRESHOLD):
        built = _sparse_spanning_tree(inst, pi, special)
    if built is None:
        built = _dense_spanning_tree(inst, pi, special)
    parent, parent_cost, order = built

    special_row = penalized_row(inst, pi, special)
    nearest_two = np.lexsort((np.arange(n), special_row))[:2]
    first, second = int(nearest_two[0]), int(nearest_two[1])

    edges = [(int(parent[v]), int(v)) for v in order[1:]]
    edges.extend([(special, first), (special, second)])
    length = float(parent_cost[order[1:]].sum() + special_row[first] + special_row[second])

    degrees = np.zeros(n, dtype=np.int64)
    for a, b in edges:
        degrees[a] += 1
        degrees[b] += 1

    return OneTreeResult(
        edges=tuple(edges),
        length=length,
        degrees=degrees,
        bound=length - 2.0 * float(pi.sum()),
        special_node=special,
        special_neighbors=(first, second),
        parent=parent,
        parent_cost=parent_cost,
        order=order,
    )


__all__ = [
    'OneTreeResult', 'minimum_one_tree', 'zero_penalties', 'penalized_row',
    'penalized_cost', 'choose_special_node', 'SPARSE_THRESHOLD',
]

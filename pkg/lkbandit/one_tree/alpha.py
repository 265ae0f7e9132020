"""Alpha-nearness: how much a minimum 1-tree grows when an edge is forced in."""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from lkbandit.tsplib import Instance
from .one_tree import OneTreeResult, penalized_row

logger = logging.getLogger(__name__)


def default_k_near(candidate_size: int) -> int:
    return max(10, 2 * candidate_size)


@dataclass(frozen=True, eq=False)
class AlphaTable:
    """Alpha values for each city's k_near nearest neighbours under penalized cost.

    Row i of ``neighbors`` lists the neighbours in ascending penalized cost;
    ``alpha[i, r]`` belongs to the edge (i, neighbors[i, r]).
    """

    neighbors: np.ndarray
    alpha: np.ndarray
    _lookup: Dict[Tuple[int, int], float] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.neighbors.shape[0]

    @property
    def k_near(self) -> int:
        return self.neighbors.shape[1]

    def get(self, i: int, j: int) -> Optional[float]:
        """Alpha of edge (i, j) if either endpoint lists the other, else None."""
        if not self._lookup:
            for a, b, value in self.items():
                self._lookup[(a, b)] = value
                self._lookup[(b, a)] = value
        return self._lookup.get((i, j))

    def items(self) -> Iterator[Tuple[int, int, float]]:
        for i in range(self.n):
            for j, value in zip(self.neighbors[i], self.alpha[i]):
                yield i, int(j), float(value)


class _PathMaximum:
    """Largest penalized edge cost on tree paths, answered with binary lifting."""

    def __init__(self, onetree: OneTreeResult, n: int):
        parent = onetree.parent.copy()
        depth = np.zeros(n, dtype=np.int64)
        for v in onetree.order[1:]:
            depth[v] = depth[parent[v]] + 1

        # Roots (tree root and special node) point at themselves
        lonely = parent < 0
        parent[lonely] = np.flatnonzero(lonely)
        up_cost = onetree.parent_cost.copy()
        up_cost[lonely] = -np.inf

        levels = max(1, int(depth.max()).bit_length())
        self.depth = depth
        self.up = [parent]
        self.best = [up_cost]
        for _ in range(1, levels):
            prev_up, prev_best = self.up[-1], self.best[-1]
            self.up.append(prev_up[prev_up])
            self.best.append(np.maximum(prev_best, prev_best[prev_up]))

    def query(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = a.copy()
        b = b.copy()
        swap = self.depth[a] < self.depth[b]
        a[swap], b[swap] = b[swap], a[swap]
        result = np.full(len(a), -np.inf)

        diff = self.depth[a] - self.depth[b]
        for level, (up, best) in enumerate(zip(self.up, self.best)):
            jump = ((diff >> level) & 1).astype(bool)
            result[jump] = np.maximum(result[jump], best[a[jump]])
            a[jump] = up[a[jump]]

        for up, best in reversed(list(zip(self.up, self.best))):
            split = up[a] != up[b]
            result[split] = np.maximum(result[split], np.maximum(best[a[split]], best[b[split]]))
            a[split] = up[a[split]]
            b[split] = up[b[split]]

        apart = a != b
        result[apart] = np.maximum(result[apart], np.maximum(self.best[0][a[apart]], self.best[0][b[apart]]))
        return result


def alpha_values(inst: Instance, onetree: OneTreeResult, pi: np.ndarray, k_near: int) -> AlphaTable:
    """Compute alpha for each city's k_near nearest neighbours by penalized cost.

    For a pair inside the spanning part, alpha is C(i,j) minus the largest
    penalized cost on the tree path between them. For pairs touching the
    special node it is C(i,j) minus the dearer of the special node's two
    1-tree edges. 1-tree edges get 0.
    """
    n = inst.n
    pi = np.asarray(pi, dtype=np.float64)
    k = min(k_near, n - 1)
    special = onetree.special_node

    neighbors = np.empty((n, k), dtype=np.int64)
    costs = np.empty((n, k), dtype=np.float64)
    everyone = np.arange(n)
    for i in range(n):
        row = penalized_row(inst, pi, i)
        near = np.lexsort((everyone, row))[:k]
        neighbors[i] = near
        costs[i] = row[near]

    heads = np.repeat(everyone, k)
    tails = neighbors.ravel()
    beta = np.empty(n * k, dtype=np.float64)

    touches_special = (heads == special) | (tails == special)
    beta[touches_special] = onetree.second_special_cost(inst, pi)
    inside = ~touches_special
    if inside.any():
        beta[inside] = _PathMaximum(onetree, n).query(heads[inside], tails[inside])

    alpha = costs.ravel() - beta
    for other in onetree.special_neighbors:
        alpha[(heads == special) & (tails == other)] = 0.0
        alpha[(heads == other) & (tails == special)] = 0.0
    # Only the sparse spanning tree can sit slightly above a true minimum
    alpha = np.maximum(alpha, 0.0).reshape(n, k)

    logger.debug(f"Computed alpha for {n} cities x {k} neighbours, "
                 f"{int((alpha == 0).sum())} zero-alpha entries")
    return AlphaTable(neighbors=neighbors, alpha=alpha)


__all__ = ['AlphaTable', 'alpha_values', 'default_k_near']

"""Edge frequencies over every local optimum found so far in a run."""

import logging
from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterable, Sequence, Tuple, Union

from lkbandit.errors import InternalError, UsageError
from lkbandit.tsplib import is_permutation

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def edge_key(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


def tour_edges(order: Sequence[int]) -> Iterable[Edge]:
    n = len(order)
    for idx in range(n):
        yield edge_key(order[idx], order[(idx + 1) % n])


class BackboneStore:
    """Counts how often each edge appeared in a recorded local optimum.

    Candidate edges are registered up front with a zero count so that they
    are tracked even before a tour uses them.
    """

    def __init__(self, n: int, candidate_edges: Iterable[Edge] = ()):
        self.n = n
        self.counts: Dict[Edge, int] = defaultdict(int)
        self.trials_recorded = 0
        for i, j in candidate_edges:
            self.counts[edge_key(i, j)] += 0

    def record_tour(self, order: Sequence[int]) -> None:
        """Add one local optimum.

        Raises:
            InternalError: if ``order`` is not a Hamiltonian cycle on the n cities.
        """
        if not is_permutation(order, self.n):
            raise InternalError(f"Refusing to record an invalid tour of {len(order)} cities (n={self.n})")
        for edge in tour_edges(order):
            self.counts[edge] += 1
        self.trials_recorded += 1

    def count(self, i: int, j: int) -> int:
        return self.counts.get(edge_key(i, j), 0)

    def frequency(self, i: int, j: int) -> float:
        """Share of recorded tours containing edge (i, j).

        Raises:
            UsageError: if no tour has been recorded yet.
        """
        if self.trials_recorded == 0:
            raise UsageError("Backbone frequency is undefined before the first recorded tour")
        return self.count(i, j) / self.trials_recorded

    def total_count(self) -> int:
        return sum(self.counts.values())

    def dump(self, path: Union[str, Path]) -> None:
        """Write ``i j count`` lines with 1-based city ids, edges sorted."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            for (i, j), eta in sorted(self.counts.items()):
                f.write(f"{i + 1} {j + 1} {eta}\n")
        logger.info(f"Wrote {len(self.counts)} backbone edges to {path} (t={self.trials_recorded})")


__all__ = ['BackboneStore', 'edge_key', 'tour_edges']

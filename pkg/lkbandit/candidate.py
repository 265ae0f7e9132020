"""Per-city candidate lists and their re-ordering between trials."""

import copy
import logging
from dataclasses import dataclass
from typing import Callable, Iterator, List, Set, Tuple

from lkbandit.errors import InternalError
from lkbandit.one_tree import AlphaTable
from lkbandit.tsplib import Instance

logger = logging.getLogger(__name__)

DEFAULT_CANDIDATE_SIZE = 5


@dataclass
class Candidate:
    """One entry of a city's candidate list."""

    neighbor: int
    alpha: float
    dist: int
    score: float


Scorer = Callable[[int, Candidate], float]


class CandidateSets:
    """Ordered candidate lists, one per city.

    Membership is fixed at construction; ``resort`` only changes the order.
    """

    def __init__(self, lists: List[List[Candidate]]):
        self.lists = lists
        self._neighbors = [tuple(c.neighbor for c in entries) for entries in lists]

    @property
    def n(self) -> int:
        return len(self.lists)

    def neighbors(self, city: int) -> Tuple[int, ...]:
        """Candidate cities of ``city`` in current order."""
        return self._neighbors[city]

    def entries(self, city: int) -> List[Candidate]:
        return self.lists[city]

    def edges(self) -> Iterator[Tuple[int, Candidate]]:
        for city, entries in enumerate(self.lists):
            for cand in entries:
                yield city, cand

    def pairs(self) -> List[Tuple[int, int]]:
        """Every (city, neighbour) pair, city-major."""
        return [(city, cand.neighbor) for city, cand in self.edges()]

    def undirected_edges(self) -> Set[Tuple[int, int]]:
        return {(min(i, c.neighbor), max(i, c.neighbor)) for i, c in self.edges()}

    def resort(self, scorer: Scorer) -> None:
        """Re-sort every list ascending by ``scorer``; ties fall back to (distance, city index)."""
        for city, entries in enumerate(self.lists):
            for cand in entries:
                cand.score = float(scorer(city, cand))
            entries.sort(key=lambda c: (c.score, c.dist, c.neighbor))
            self._neighbors[city] = tuple(c.neighbor for c in entries)

    def copy(self) -> "CandidateSets":
        return CandidateSets(copy.deepcopy(self.lists))


def alpha_scorer(city: int, cand: Candidate) -> float:
    return cand.alpha


def build_candidate_sets(alpha: AlphaTable, inst: Instance, candidate_size: int = DEFAULT_CANDIDATE_SIZE) -> CandidateSets:
    """Keep each city's ``candidate_size`` smallest-alpha neighbours.

    Lists are directional: an edge can be a candidate of one endpoint only.

    Raises:
        InternalError: if some city has fewer alpha entries than requested.
    """
    if alpha.k_near < candidate_size:
        raise InternalError(
            f"Alpha table holds {alpha.k_near} neighbours per city, {candidate_size} candidates requested")

    lists = []
    for city in range(inst.n):
        entries = [
            Candidate(neighbor=int(j), alpha=float(a), dist=inst.dist(city, int(j)), score=float(a))
            for j, a in zip(alpha.neighbors[city], alpha.alpha[city])
            if int(j) != city
        ]
        if len(entries) < candidate_size:
            raise InternalError(f"City {city} has only {len(entries)} alpha entries")
        entries.sort(key=lambda c: (c.alpha, c.dist, c.neighbor))
        lists.append(entries[:candidate_size])

    logger.debug(f"Built candidate sets of size {candidate_size} for {inst.n} cities")
    return CandidateSets(lists)


def resort_candidates(sets: CandidateSets, scorer: Scorer) -> None:
    """Re-order every candidate list by ``scorer`` without changing membership."""
    sets.resort(scorer)


__all__ = [
    'Candidate', 'CandidateSets', 'Scorer', 'alpha_scorer',
    'build_candidate_sets', 'resort_candidates', 'DEFAULT_CANDIDATE_SIZE',
]

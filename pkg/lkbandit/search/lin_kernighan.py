"""Sequential k-opt local search with don't-look bits.

A move is stored as the cities t1, t2, ..., t2k: edges (t1,t2), (t3,t4), ...
leave the tour and (t2,t3), (t4,t5), ..., (t2k,t1) enter it. Each position in
that sequence is a "slot"; a city can fill two slots when both of its tour
edges are removed.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Set, Tuple

from lkbandit.backbone import edge_key
from lkbandit.candidate import CandidateSets
from lkbandit.errors import UsageError
from lkbandit.tsplib import Instance
from .tour import Tour

logger = logging.getLogger(__name__)

DEFAULT_K_MAX = 5


@dataclass(frozen=True)
class Move:
    """An improving sequential move: ``cities`` is t1..t2k, ``gain`` the length saved."""

    cities: Tuple[int, ...]
    gain: int

    @property
    def k(self) -> int:
        return len(self.cities) // 2

    def removed_edges(self) -> List[Tuple[int, int]]:
        t = self.cities
        return [edge_key(t[i], t[i + 1]) for i in range(0, len(t), 2)]

    def added_edges(self) -> List[Tuple[int, int]]:
        t = self.cities
        return [edge_key(t[i], t[(i + 1) % len(t)]) for i in range(1, len(t), 2)]


def _added_partner(slot: int, size: int) -> int:
    if slot == 0:
        return size - 1
    if slot == size - 1:
        return 0
    return slot + 1 if slot % 2 else slot - 1


def _cut_layout(tour: Tour, cities: List[int]):
    """Pair up slot ends along the tour.

    Returns (start, other_end, is_right): ``other_end[s]`` is the slot at the
    far end of the tour segment beginning at slot s, ``is_right[s]`` says the
    segment runs forward from s.
    """
    size = len(cities)
    k = size // 2
    cuts = []
    for j in range(k):
        a, b = cities[2 * j], cities[2 * j + 1]
        if tour.next(a) == b:
            cuts.append((tour.pos[a], 2 * j, 2 * j + 1))
        else:
            cuts.append((tour.pos[b], 2 * j + 1, 2 * j))
    cuts.sort()

    other_end = [0] * size
    is_right = [False] * size
    for s in range(k):
        right = cuts[s][2]
        left = cuts[(s + 1) % k][1]
        other_end[right] = left
        other_end[left] = right
        is_right[right] = True
    return cuts[0][2], other_end, is_right


def is_feasible(tour: Tour, cities: List[int]) -> bool:
    """True if the move described by ``cities`` closes into a single cycle."""
    size = len(cities)
    k = size // 2
    start, other_end, _ = _cut_layout(tour, cities)
    slot = start
    visited = 0
    while True:
        visited += 1
        slot = _added_partner(other_end[slot], size)
        if slot == start or visited > k:
            break
    return visited == k


def apply_move(tour: Tour, move: Move) -> None:
    """Rewire ``tour`` in place; two-edge moves reverse the shorter side."""
    cities = list(move.cities)
    size = len(cities)
    start, other_end, is_right = _cut_layout(tour, cities)
    pos = tour.pos

    if move.k == 2:
        n = tour.n
        first_from, first_to = pos[cities[start]], pos[cities[other_end[start]]]
        second = _added_partner(other_end[start], size)
        if not is_right[second]:
            second = other_end[second]
        second_from, second_to = pos[cities[second]], pos[cities[other_end[second]]]
        if (first_to - first_from) % n <= (second_to - second_from) % n:
            tour.reverse(first_from, first_to)
        else:
            tour.reverse(second_from, second_to)
    else:
        order = []
        slot = start
        for _ in range(move.k):
            far = other_end[slot]
            if is_right[slot]:
                order.extend(tour.segment(pos[cities[slot]], pos[cities[far]]))
            else:
                order.extend(reversed(tour.segment(pos[cities[far]], pos[cities[slot]])))
            slot = _added_partner(far, size)
        tour.replace_order(order)

    tour.length -= move.gain


class _MoveSearch:
    """Depth-first search for one improving move from a fixed t1."""

    def __init__(self, inst: Instance, tour: Tour, sets: CandidateSets, k_max: int):
        self.dist = inst.dist
        self.tour = tour
        self.sets = sets
        self.k_max = k_max
        self.cities: List[int] = []
        self.removed: Set[Tuple[int, int]] = set()
        self.added: Set[Tuple[int, int]] = set()

    def run(self, t1: int) -> Optional[Move]:
        tour = self.tour
        for t2 in (tour.next(t1), tour.prev(t1)):
            self.cities = [t1, t2]
            self.removed = {edge_key(t1, t2)}
            self.added = set()
            move = self._extend(self.dist(t1, t2))
            if move is not None:
                return move
        return None

    def _extend(self, gain: int) -> Optional[Move]:
        tour, dist, cities = self.tour, self.dist, self.cities
        t1 = cities[0]
        last = cities[-1]
        k = len(cities) // 2

        for t3 in self.sets.neighbors(last):
            if t3 == t1 or tour.adjacent(last, t3):
                continue
            g1 = gain - dist(last, t3)
            if g1 <= 0:
                continue
            add = edge_key(last, t3)
            if add in self.added:
                continue

            for t4 in (tour.next(t3), tour.prev(t3)):
                if t4 == t1:
                    continue
                rem = edge_key(t3, t4)
                if rem in self.removed:
                    continue
                g2 = g1 + dist(t3, t4)
                cities.extend((t3, t4))
                self.removed.add(rem)
                self.added.add(add)

                if not tour.adjacent(t4, t1) and edge_key(t4, t1) not in self.added:
                    total = g2 - dist(t4, t1)
                    if total > 0 and is_feasible(tour, cities):
                        return Move(tuple(cities), total)
                if k + 1 < self.k_max:
                    move = self._extend(g2)
                    if move is not None:
                        return move

                del cities[-2:]
                self.removed.discard(rem)
                self.added.discard(add)
        return None


def sequential_step(inst: Instance, tour: Tour, p1: int, sets: CandidateSets, k_max: int = DEFAULT_K_MAX) -> Optional[Move]:
    """First improving sequential move of depth <= k_max starting at ``p1``, or None."""
    if k_max < 2:
        raise UsageError(f"k_max must be at least 2, got {k_max}")
    return _MoveSearch(inst, tour, sets, k_max).run(p1)


def lin_kernighan(inst: Instance, tour: Tour, sets: CandidateSets, k_max: int = DEFAULT_K_MAX) -> Tour:
    """Improve a copy of ``tour`` until no city yields an improving move."""
    if k_max < 2:
        raise UsageError(f"k_max must be at least 2, got {k_max}")
    tour = tour.copy()
    search = _MoveSearch(inst, tour, sets, k_max)
    queue = deque(tour.order)
    queued = [True] * tour.n
    start_length = tour.length
    moves = 0

    def requeue(move: Move) -> None:
        for city in move.cities:
            if not queued[city]:
                queued[city] = True
                queue.append(city)

    while True:
        while queue:
            t1 = queue.popleft()
            queued[t1] = False
            move = search.run(t1)
            if move is not None:
                apply_move(tour, move)
                moves += 1
                requeue(move)

        # A move elsewhere can change which reconnection is feasible for a city
        # that already failed, so finish with a sweep over every city
        for t1 in range(tour.n):
            move = search.run(t1)
            if move is not None:
                apply_move(tour, move)
                moves += 1
                requeue(move)
                break
        else:
            break

    logger.debug(f"Local search: {moves} moves, {start_length} -> {tour.length}")
    return tour


__all__ = ['Move', 'sequential_step', 'lin_kernighan', 'apply_move', 'is_feasible', 'DEFAULT_K_MAX']

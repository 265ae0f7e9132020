"""Greedy walk over candidate lists that builds each trial's starting tour."""

import random
from typing import Optional

import numpy as np

from lkbandit.candidate import CandidateSets
from lkbandit.tsplib import Instance
from .tour import Tour


def _nearest_unvisited(inst: Instance, city: int, visited: np.ndarray) -> int:
    row = inst.cost_row(city).astype(np.float64)
    row[visited] = np.inf
    return int(np.argmin(row))


def choose_initial_tour(inst: Instance, best: Optional[Tour], sets: CandidateSets, rng: random.Random) -> Tour:
    """Walk from a random city, always stepping to an unvisited neighbour.

    Without a best tour the walk takes the first unvisited candidate. With
    one, it picks at random among unvisited candidates that are also
    neighbours in the best tour, then among any unvisited candidates. The
    nearest unvisited city is the last resort.
    """
    n = inst.n
    visited = np.zeros(n, dtype=bool)
    city = rng.randrange(n)
    visited[city] = True
    order = [city]

    for _ in range(n - 1):
        open_candidates = [c for c in sets.neighbors(city) if not visited[c]]
        step = None
        if best is None:
            if open_candidates:
                step = open_candidates[0]
        else:
            both = [c for c in open_candidates if best.adjacent(city, c)]
            if both:
                step = rng.choice(both)
            elif open_candidates:
                step = rng.choice(open_candidates)
        if step is None:
            step = _nearest_unvisited(inst, city, visited)
        visited[step] = True
        order.append(step)
        city = step

    return Tour.from_order(inst, order)


__all__ = ['choose_initial_tour']

"""Test tours, initial-tour construction and the k-opt local search."""

import itertools
import logging
import random

import pytest

from lkbandit.candidate import build_candidate_sets, resort_candidates
from lkbandit.cli.oracle import brute_force_optimum
from lkbandit.errors import InternalError
from lkbandit.one_tree import alpha_values, ascend_penalties
from lkbandit.search import Move, Tour, apply_move, choose_initial_tour, is_feasible, lin_kernighan, sequential_step
from lkbandit.tests.conftest import random_instance
from lkbandit.tsplib import Instance, tour_length

logging.basicConfig(level=logging.DEBUG)
logger = logging.getLogger(__name__)


def candidate_sets(inst, size=5):
    pi, _, tree = ascend_penalties(inst)
    k_near = min(max(10, 2 * size), inst.n - 1)
    return build_candidate_sets(alpha_values(inst, tree, pi, k_near), inst, min(size, inst.n - 1))


def random_tour(inst, seed):
    order = list(range(inst.n))
    random.Random(seed).shuffle(order)
    return Tour.from_order(inst, order)


def test_tour_navigation(square):
    tour = Tour.from_order(square, [2, 0, 3, 1])
    assert tour.length == tour_length(square, [2, 0, 3, 1])
    assert tour.next(1) == 2
    assert tour.prev(2) == 1
    assert tour.adjacent(0, 3)
    assert not tour.adjacent(2, 3)
    assert tour.segment(3, 0) == [1, 2]


def test_reverse_wraps_around():
    inst = random_instance(1, 7)
    tour = Tour.from_order(inst, list(range(7)))
    tour.reverse(5, 1)
    assert tour.order == [6, 5, 2, 3, 4, 1, 0]
    assert all(tour.pos[city] == idx for idx, city in enumerate(tour.order))


def test_validate_catches_stale_length(square):
    tour = Tour.from_order(square, [0, 1, 2, 3])
    tour.validate(square)
    tour.length += 1
    with pytest.raises(InternalError):
        tour.validate(square)
    with pytest.raises(InternalError):
        Tour.from_order(square, [0, 1, 1, 3])


def test_crossed_square_step(square):
    """Test the 2-opt move that uncrosses the diagonals."""
    sets = candidate_sets(square)
    tour = Tour.from_order(square, [0, 2, 1, 3])
    assert tour.length == 48
    move = sequential_step(square, tour, 0, sets, k_max=5)
    assert move is not None
    assert move.k == 2
    # 2 * (14 - 10) after rounding the diagonal
    assert move.gain == 8
    apply_move(tour, move)
    tour.validate(square)
    assert tour.length == 40


def test_crossed_square_uncrossed(square):
    sets = candidate_sets(square)
    tour = Tour.from_order(square, [0, 2, 1, 3])
    result = lin_kernighan(square, tour, sets, 5)
    assert result.length == 40
    result.validate(square)
    # Input tour untouched
    assert tour.order == [0, 2, 1, 3]


def test_no_move_when_nothing_is_shorter(square):
    sets = candidate_sets(square)
    tour = Tour.from_order(square, [0, 1, 2, 3])
    for city in range(4):
        assert sequential_step(square, tour, city, sets) is None


def test_gain_bookkeeping():
    inst = Instance.from_coords("pts", [[0, 0], [10, 0], [10, 10], [0, 10], [5, 20]])
    sets = candidate_sets(inst)
    tour = Tour.from_order(inst, [0, 2, 1, 3, 4])
    move = sequential_step(inst, tour, 0, sets)
    assert move is not None
    removed = sum(inst.cost(a, b) for a, b in move.removed_edges())
    added = sum(inst.cost(a, b) for a, b in move.added_edges())
    assert move.gain == removed - added > 0


def test_feasibility_of_three_opt_variants():
    inst = random_instance(2, 10)
    tour = Tour.from_order(inst, list(range(10)))
    # Segment reinsertion: remove (1,2), (4,5), (7,8); add (2,5), (4,8), (7,1)
    assert is_feasible(tour, [1, 2, 5, 4, 8, 7])
    # Pure 2-opt and its infeasible twin
    assert is_feasible(tour, [0, 1, 5, 4])
    assert not is_feasible(tour, [0, 1, 4, 5])


def test_apply_three_opt_rebuild():
    inst = random_instance(3, 10)
    tour = Tour.from_order(inst, list(range(10)))
    cities = (1, 2, 5, 4, 8, 7)
    removed = inst.cost(1, 2) + inst.cost(5, 4) + inst.cost(8, 7)
    added = inst.cost(2, 5) + inst.cost(4, 8) + inst.cost(7, 1)
    apply_move(tour, Move(cities, removed - added))
    tour.validate(inst)
    assert sorted(tour.order) == list(range(10))
    for a, b in [(2, 5), (4, 8), (7, 1)]:
        assert tour.adjacent(a, b)
    for a, b in [(1, 2), (4, 5), (7, 8)]:
        assert not tour.adjacent(a, b)


@pytest.mark.parametrize("seed", range(10))
def test_local_search_is_monotone_and_valid(seed):
    inst = random_instance(300 + seed, 40)
    sets = candidate_sets(inst)
    start = random_tour(inst, seed)
    result = lin_kernighan(inst, start, sets, 5)
    result.validate(inst)
    assert result.length <= start.length
    assert result.length == tour_length(inst, result.order)


def test_reversed_candidates_still_improve():
    inst = random_instance(7, 30)
    sets = candidate_sets(inst)
    resort_candidates(sets, lambda city, cand: -cand.alpha)
    start = random_tour(inst, 1)
    result = lin_kernighan(inst, start, sets, 5)
    result.validate(inst)
    assert result.length <= start.length


def test_no_improving_two_exchange_remains():
    inst = random_instance(8, 12)
    sets = candidate_sets(inst, size=inst.n - 1)
    result = lin_kernighan(inst, random_tour(inst, 2), sets, 5)
    order, n = result.order, inst.n
    for i, j in itertools.combinations(range(n), 2):
        a, b = order[i], order[(i + 1) % n]
        c, d = order[j], order[(j + 1) % n]
        if len({a, b, c, d}) < 4:
            continue
        delta = inst.cost(a, c) + inst.cost(b, d) - inst.cost(a, b) - inst.cost(c, d)
        assert delta >= 0


def test_optimal_tour_is_unchanged():
    inst = random_instance(9, 5)
    optimum, order = brute_force_optimum(inst)
    sets = candidate_sets(inst)
    result = lin_kernighan(inst, Tour.from_order(inst, order), sets, 5)
    assert result.length == optimum


def test_restarts_reach_exhaustive_optimum():
    """Test that the best of 20 restarts matches exhaustive search on small instances."""
    hits = 0
    for seed in range(20):
        inst = random_instance(400 + seed, 6 + seed % 5)
        optimum, _ = brute_force_optimum(inst)
        sets = candidate_sets(inst)
        best = min(lin_kernighan(inst, random_tour(inst, r), sets, 5).length for r in range(20))
        hits += best == optimum
    logger.info(f"Restarts reached the optimum on {hits}/20 instances")
    assert hits >= 19


def test_initial_tour_on_three_cities():
    inst = Instance.from_coords("tri", [[0, 0], [3, 0], [0, 4]])
    sets = candidate_sets(inst)
    for seed in range(5):
        tour = choose_initial_tour(inst, None, sets, random.Random(seed))
        assert sorted(tour.order) == [0, 1, 2]
        assert tour.length == 12


def test_initial_tour_is_deterministic():
    inst = random_instance(10, 50)
    sets = candidate_sets(inst)
    best = lin_kernighan(inst, random_tour(inst, 0), sets, 5)
    first = choose_initial_tour(inst, best, sets, random.Random(42))
    second = choose_initial_tour(inst, best, sets, random.Random(42))
    assert first.order == second.order
    first.validate(inst)


def test_initial_tour_follows_best_tour():
    inst = random_instance(11, 60)
    sets = candidate_sets(inst)
    best = lin_kernighan(inst, random_tour(inst, 0), sets, 5)
    tour = choose_initial_tour(inst, best, sets, random.Random(5))
    shared = sum(best.adjacent(tour.order[i], tour.order[(i + 1) % inst.n]) for i in range(inst.n))
    logger.info(f"Initial tour shares {shared}/{inst.n} edges with the best tour")
    assert shared > 0

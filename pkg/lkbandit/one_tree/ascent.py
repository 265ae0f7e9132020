"""Subgradient ascent on the penalties to tighten the 1-tree lower bound."""

import logging
from typing import Optional, Tuple

import numpy as np

from lkbandit.tsplib import Instance
from .one_tree import OneTreeResult, minimum_one_tree, zero_penalties

logger = logging.getLogger(__name__)

INITIAL_STEP = 1.0
MIN_STEP = 1e-4
# Weights of the current and previous subgradient in the update
CURRENT_WEIGHT = 0.7
PREVIOUS_WEIGHT = 0.3
OPENING_CUT = 0.75


def initial_period(n: int) -> int:
    return max(n // 2, 10)


class StepSchedule:
    """Step size and period bookkeeping for the ascent.

    During the opening phase every improving iteration doubles the step. The
    first non-improving iteration in the second half of a period ends the
    opening phase, cuts the step to 3/4 and restarts the period. After that,
    only an improvement on a period's last iteration doubles the step. Each
    finished period halves both the period length and the step.
    """

    def __init__(self, period: int, step: float = INITIAL_STEP):
        self.period = period
        self.step = step
        self.p = 1
        self.opening = True

    @property
    def exhausted(self) -> bool:
        return self.period < 1 or self.step < MIN_STEP

    def advance(self, improved: bool) -> bool:
        """Account for one iteration; True when it finished a period."""
        if improved:
            if self.opening:
                self.step *= 2.0
            if self.p == self.period:
                self.step *= 2.0
        elif self.opening and self.p > self.period // 2:
            self.opening = False
            self.p = 0
            self.step *= OPENING_CUT

        self.p += 1
        if self.p <= self.period:
            return False
        self.period //= 2
        self.step /= 2.0
        self.p = 1
        return True


def ascend_penalties(
    inst: Instance,
    initial_step: float = INITIAL_STEP,
    period: Optional[int] = None,
    sparse: Optional[bool] = None,
) -> Tuple[np.ndarray, float, OneTreeResult]:
    """Maximize the Held-Karp bound w(pi) by subgradient ascent.

    Each iteration moves pi along v_i = degree_i - 2, smoothed with the
    previous subgradient; StepSchedule decides the step.

    Args:
        inst: The instance.
        initial_step: First step size, in cost units.
        period: First period length, ``max(n // 2, 10)`` by default.
        sparse: Passed through to minimum_one_tree.

    Returns:
        (pi, bound, onetree) for the best bound seen.
    """
    n = inst.n
    pi = zero_penalties(n)
    tree = minimum_one_tree(inst, pi, sparse=sparse)
    best_pi, best_bound, best_tree = pi.copy(), tree.bound, tree
    logger.debug(f"Ascent start for {inst.name}: bound={best_bound:.2f}")

    if tree.is_tour:
        logger.info(f"Minimum 1-tree of {inst.name} is already a tour, bound={best_bound:.2f}")
        return best_pi, best_bound, best_tree

    v = (tree.degrees - 2).astype(np.float64)
    last_v = v.copy()
    schedule = StepSchedule(period or initial_period(n), initial_step)
    iterations = 0

    while not schedule.exhausted:
        pi = pi + schedule.step * (CURRENT_WEIGHT * v + PREVIOUS_WEIGHT * last_v)
        tree = minimum_one_tree(inst, pi, sparse=sparse)
        iterations += 1
        last_v = v
        v = (tree.degrees - 2).astype(np.float64)

        improved = tree.bound > best_bound
        if improved:
            best_pi, best_bound, best_tree = pi.copy(), tree.bound, tree
        if tree.is_tour:
            logger.info(f"Ascent for {inst.name} reached a tour after {iterations} iterations, "
                        f"bound={best_bound:.2f}")
            return best_pi, best_bound, best_tree

        if schedule.advance(improved):
            logger.debug(f"Ascent period done: period={schedule.period}, step={schedule.step:.5f}, "
                         f"bound={best_bound:.2f}")

    logger.info(f"Ascent for {inst.name} finished after {iterations} iterations, bound={best_bound:.2f}")
    return best_pi, best_bound, best_tree


__all__ = ['ascend_penalties', 'initial_period', 'StepSchedule']

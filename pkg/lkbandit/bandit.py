"""Upper-confidence-bound selection of the metric weight."""

import logging
import math

import numpy as np

from lkbandit.errors import UsageError

logger = logging.getLogger(__name__)

DEFAULT_ARMS = 5
DEFAULT_STEP_SIZE = 0.06
DEFAULT_UCB_C = 20.0


def base_weights(m: int) -> np.ndarray:
    """Evenly spaced weights 0, 1/(m-1), ..., 1."""
    if m < 1:
        raise UsageError(f"A bandit needs at least one arm, got {m}")
    if m == 1:
        return np.ones(1)
    return np.arange(m, dtype=np.float64) / (m - 1)


class Bandit:
    """UCB bandit over candidate-ordering weights.

    Arms are 0-based here; reports number them from 1.
    """

    def __init__(self, m: int = DEFAULT_ARMS, c: float = DEFAULT_UCB_C, s: float = DEFAULT_STEP_SIZE):
        self.m = m
        self.c = c
        self.s = s
        self.weights = base_weights(m)
        self.values = np.zeros(m, dtype=np.float64)
        self.pulls = np.zeros(m, dtype=np.int64)
        self.total = 0

    def ucb_scores(self) -> np.ndarray:
        log_total = math.log(self.total) if self.total > 0 else 0.0
        return self.values + self.c * np.sqrt(log_total / (self.pulls + 1))

    def select_arm(self) -> int:
        """Arm with the highest UCB score, lowest index on ties; counts one pull."""
        arm = int(np.argmax(self.ucb_scores()))
        self.pulls[arm] += 1
        return arm

    def pull(self) -> int:
        """Count a selection and pick an arm, in that order."""
        self.total += 1
        return self.select_arm()

    def update_value(self, arm: int, r: float) -> None:
        self.values[arm] += self.s * (r - self.values[arm])

    def effective_weight(self, arm: int, t: int, bs: int, gamma: float) -> float:
        """Base weight of ``arm`` discounted by gamma for each trial past the warm-up."""
        return float(self.weights[arm] * gamma ** (t - bs))


def reward(len_best: int, len_new: int, lower_bound: float) -> float:
    """Improvement over the best tour, scaled by the distance from best to the bound."""
    return (len_best - len_new) / (len_best - lower_bound + 1.0)


__all__ = ['Bandit', 'base_weights', 'reward', 'DEFAULT_ARMS', 'DEFAULT_STEP_SIZE', 'DEFAULT_UCB_C']

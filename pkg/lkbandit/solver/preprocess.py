"""Work done once per instance and shared by every run."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from lkbandit.one_tree import AlphaTable, OneTreeResult, alpha_values, ascend_penalties, default_k_near
from lkbandit.tsplib import Instance

logger = logging.getLogger(__name__)

# Share of the known optimum the ascent bound should reach
BOUND_TARGET = 0.97
BOUND_FLOOR = 0.95


@dataclass(frozen=True, eq=False)
class Preprocessed:
    pi: np.ndarray
    lower_bound: float
    onetree: OneTreeResult
    alpha: AlphaTable


def check_lower_bound(inst: Instance, lower_bound: float) -> None:
    """Log how the bound compares with the known optimum, if there is one."""
    optimum = inst.known_optimum
    if optimum is None:
        return
    if math.ceil(lower_bound - 1e-6) > optimum:
        logger.error(f"Lower bound {lower_bound:.2f} of {inst.name} exceeds the known optimum {optimum}")
    elif lower_bound < BOUND_FLOOR * optimum:
        logger.warning(f"Lower bound of {inst.name} is only {lower_bound / optimum:.1%} of the optimum")
    elif lower_bound < BOUND_TARGET * optimum:
        logger.info(f"Lower bound of {inst.name} is {lower_bound / optimum:.1%} of the optimum")


def preprocess(inst: Instance, candidate_size: int) -> Preprocessed:
    """Run the penalty ascent and compute alpha for every city's near neighbours."""
    pi, bound, tree = ascend_penalties(inst)
    k_near = min(default_k_near(candidate_size), inst.n - 1)
    alpha = alpha_values(inst, tree, pi, k_near)
    check_lower_bound(inst, bound)
    return Preprocessed(pi=pi, lower_bound=bound, onetree=tree, alpha=alpha)


__all__ = ['Preprocessed', 'preprocess', 'check_lower_bound']

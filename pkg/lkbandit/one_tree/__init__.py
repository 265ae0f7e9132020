"""Minimum 1-trees, Held-Karp penalty ascent and alpha-nearness."""

from .one_tree import (
    OneTreeResult, minimum_one_tree, zero_penalties, penalized_row,
    penalized_cost, choose_special_node, SPARSE_THRESHOLD,
)
from .ascent import StepSchedule, ascend_penalties, initial_period
from .alpha import AlphaTable, alpha_values, default_k_near

__all__ = [
    'OneTreeResult', 'minimum_one_tree', 'zero_penalties', 'penalized_row',
    'penalized_cost', 'choose_special_node', 'SPARSE_THRESHOLD',
    'ascend_penalties', 'initial_period', 'StepSchedule',
    'AlphaTable', 'alpha_values', 'default_k_near',
]

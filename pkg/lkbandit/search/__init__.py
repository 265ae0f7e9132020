"""Tours, initial-tour construction and the k-opt local search."""

from .tour import Tour
from .initial_tour import choose_initial_tour
from .lin_kernighan import Move, sequential_step, lin_kernighan, apply_move, is_feasible, DEFAULT_K_MAX

__all__ = [
    'Tour', 'choose_initial_tour',
    'Move', 'sequential_step', 'lin_kernighan', 'apply_move', 'is_feasible', 'DEFAULT_K_MAX',
]

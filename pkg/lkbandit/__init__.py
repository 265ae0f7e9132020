"""
lkbandit - bandit-guided k-opt search for the symmetric TSP
"""

from .tsplib import Instance, load_instance, parse_instance, load_registry
from .solver import Params, RunResult, BatchSummary, parse_mode, solve, run_batch

__version__ = "0.1.0"

__all__ = [
    'Instance', 'load_instance', 'parse_instance', 'load_registry',
    'Params', 'RunResult', 'BatchSummary', 'parse_mode', 'solve', 'run_batch',
]

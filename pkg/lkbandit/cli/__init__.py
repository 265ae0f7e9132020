"""Command-line interface and the exhaustive oracles it exposes."""

from .oracle import brute_force_optimum, forced_edge_alpha, ORACLE_MAX_CITIES
from .main import main, build_parser, cmd_solve, cmd_bench, cmd_oracle

__all__ = [
    'brute_force_optimum', 'forced_edge_alpha', 'ORACLE_MAX_CITIES',
    'main', 'build_parser', 'cmd_solve', 'cmd_bench', 'cmd_oracle',
]

"""Run orchestration: parameters, preprocessing, single runs and batches."""

from .params import ModeKind, Mode, parse_mode, Params
from .preprocess import Preprocessed, preprocess, check_lower_bound
from .solve import RunResult, TrialRecord, solve, trial_rngs
from .batch import BatchSummary, run_batch, summarize

__all__ = [
    'ModeKind', 'Mode', 'parse_mode', 'Params',
    'Preprocessed', 'preprocess', 'check_lower_bound',
    'RunResult', 'TrialRecord', 'solve', 'trial_rngs',
    'BatchSummary', 'run_batch', 'summarize',
]

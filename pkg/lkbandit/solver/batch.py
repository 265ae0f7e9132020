"""Repeated independent runs and their summary."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from statistics import mean
from typing import List, Optional, Union

from joblib import Parallel, delayed

from lkbandit.errors import UsageError
from lkbandit.tsplib import Instance
from .params import Params
from .preprocess import Preprocessed, preprocess
from .solve import RunResult, solve

logger = logging.getLogger(__name__)


@dataclass
class BatchSummary:
    """Success, Best, Average, Trials and Time over a set of runs."""

    instance: str
    mode: str
    runs: int
    success: Optional[int]
    best: int
    average: float
    mean_trials: float
    mean_time: float
    optimum: Optional[int]
    lower_bound: float
    results: List[RunResult] = field(default_factory=list, repr=False)

    @property
    def mean_gap(self) -> Optional[float]:
        """Average relative excess over the optimum, None when it is unknown."""
        if self.optimum is None:
            return None
        return mean(r.gap for r in self.results)

    def as_row(self) -> dict:
        return {
            "instance": self.instance,
            "mode": self.mode,
            "success": "-" if self.success is None else f"{self.success}/{self.runs}",
            "best": self.best,
            "average": self.average,
            "trials": self.mean_trials,
            "time": self.mean_time,
        }

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "mode": self.mode,
            "runs": self.runs,
            "success": self.success,
            "best": self.best,
            "average": self.average,
            "mean_trials": self.mean_trials,
            "mean_time": self.mean_time,
            "optimum": self.optimum,
            "lower_bound": self.lower_bound,
            "mean_gap": self.mean_gap,
            "results": [r.to_dict() for r in self.results],
        }


def summarize(inst: Instance, params: Params, results: List[RunResult], lower_bound: float) -> BatchSummary:
    optimum = inst.known_optimum
    return BatchSummary(
        instance=inst.name,
        mode=params.mode.label,
        runs=len(results),
        success=None if optimum is None else sum(1 for r in results if r.reached_optimum),
        best=min(r.best_length for r in results),
        average=mean(r.best_length for r in results),
        mean_trials=mean(r.trials_used for r in results),
        mean_time=mean(r.wall_time for r in results),
        optimum=optimum,
        lower_bound=lower_bound,
        results=results,
    )


def _backbone_path(path: Optional[Union[str, Path]], run_index: int, runs: int) -> Optional[Path]:
    if path is None:
        return None
    path = Path(path)
    if runs == 1:
        return path
    return path.with_name(f"{path.stem}.run{run_index + 1}{path.suffix}")


def _run_one(inst: Instance, params: Params, pre: Preprocessed, backbone_path: Optional[Path]) -> RunResult:
    return solve(inst, params, pre=pre, backbone_path=backbone_path)


def run_batch(
    inst: Instance,
    params: Params,
    runs: int,
    jobs: int = 1,
    pre: Optional[Preprocessed] = None,
    backbone_path: Optional[Union[str, Path]] = None,
) -> BatchSummary:
    """Run ``runs`` independent solves; run r uses seed ``params.seed + r``.

    Preprocessing happens once. With ``jobs > 1`` runs execute in parallel
    processes; results keep run order either way.
    """
    if runs < 1:
        raise UsageError(f"runs must be positive, got {runs}")
    params.validate()
    if pre is None:
        pre = preprocess(inst, params.candidate_size)

    tasks = [
        (inst, params.with_seed(params.seed + r), pre, _backbone_path(backbone_path, r, runs))
        for r in range(runs)
    ]
    if jobs > 1 and runs > 1:
        logger.info(f"Running {runs} runs of {inst.name} on {jobs} workers")
        results = Parallel(n_jobs=jobs)(delayed(_run_one)(*task) for task in tasks)
    else:
        results = [_run_one(*task) for task in tasks]

    summary = summarize(inst, params, list(results), pre.lower_bound)
    logger.info(f"{inst.name} [{summary.mode}]: best={summary.best}, average={summary.average:.1f}, "
                f"success={summary.as_row()['success']}")
    return summary


__all__ = ['BatchSummary', 'run_batch', 'summarize']

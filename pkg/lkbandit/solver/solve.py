"""One run: warm-up trials, then bandit-driven candidate ordering."""

import logging
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from lkbandit.backbone import BackboneStore
from lkbandit.bandit import Bandit, reward
from lkbandit.candidate import build_candidate_sets, resort_candidates
from lkbandit.metric import backbone_scorer, snapshot_ranges
from lkbandit.search import Tour, choose_initial_tour, lin_kernighan
from lkbandit.tsplib import Instance
from .params import ModeKind, Params
from .preprocess import Preprocessed, preprocess

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialRecord:
    """Bandit state after one trial past the warm-up; ``arm`` is 0-based."""

    trial: int
    arm: int
    w: float
    reward: float
    values: Tuple[float, ...]


@dataclass
class RunResult:
    best_length: int
    best_tour: List[int]
    trials_used: int
    wall_time: float
    reached_optimum: Optional[bool]
    lower_bound: float
    gap: Optional[float] = None
    seed: int = 0
    bandit_trace: Optional[List[TrialRecord]] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        """JSON-ready form with 1-based city ids."""
        return {
            "seed": self.seed,
            "best_length": self.best_length,
            "best_tour": [city + 1 for city in self.best_tour],
            "trials_used": self.trials_used,
            "wall_time": self.wall_time,
            "reached_optimum": self.reached_optimum,
            "lower_bound": self.lower_bound,
            "gap": self.gap,
        }


def trial_rngs(seed: int, trials: int) -> List[random.Random]:
    """One independent generator per trial, split from the run seed."""
    children = np.random.SeedSequence(seed).spawn(trials)
    return [random.Random(int(child.generate_state(1)[0])) for child in children]


def solve(
    inst: Instance,
    params: Params,
    pre: Optional[Preprocessed] = None,
    backbone_path: Optional[Union[str, Path]] = None,
) -> RunResult:
    """Run up to ``params.trials_for(inst.n)`` trials and return the best tour.

    Args:
        inst: The instance; a known optimum enables the early exit.
        params: Run parameters, including the seed.
        pre: Shared preprocessing, computed here when omitted.
        backbone_path: Write the final edge counts here.
    """
    params.validate()
    started = time.perf_counter()
    n = inst.n
    trials = params.trials_for(n)
    if pre is None:
        pre = preprocess(inst, params.candidate_size)

    sets = build_candidate_sets(pre.alpha, inst, min(params.candidate_size, n - 1))
    mode = params.mode
    backbone = BackboneStore(n, sets.undirected_edges()) if mode.uses_backbone else None
    bandit = Bandit(params.m, params.c, params.s) if mode.kind is ModeKind.MABB else None
    trace: Optional[List[TrialRecord]] = [] if bandit is not None else None
    optimum = inst.known_optimum

    best: Optional[Tour] = None
    trials_used = 0
    for t, rng in enumerate(trial_rngs(params.seed, trials), start=1):
        trials_used = t
        tour = choose_initial_tour(inst, best, sets, rng)

        arm = None
        if backbone is not None and t > params.bs:
            if bandit is not None:
                arm = bandit.pull()
                w = bandit.effective_weight(arm, t, params.bs, params.gamma)
            else:
                w = mode.w
            # With bs = 0 the first trial has no frequencies yet and keeps the alpha order
            if backbone.trials_recorded > 0:
                snap = snapshot_ranges(sets, backbone, w)
                resort_candidates(sets, backbone_scorer(backbone, snap))

        tour = lin_kernighan(inst, tour, sets, params.k_max)
        tour.validate(inst)

        if arm is not None:
            r = reward(best.length, tour.length, pre.lower_bound) if best is not None else 0.0
            bandit.update_value(arm, r)
            trace.append(TrialRecord(t, arm, w, r, tuple(float(v) for v in bandit.values)))
            logger.debug(f"Trial {t}: arm {arm + 1}, w={w:.4f}, reward={r:.5f}")
        if backbone is not None:
            backbone.record_tour(tour.order)

        if best is None or tour.length < best.length:
            best = tour
            logger.info(f"{inst.name} trial {t}: new best {best.length}")
        if optimum is not None and best.length <= optimum:
            logger.info(f"{inst.name}: optimum {optimum} reached at trial {t}")
            break

    if backbone is not None and backbone_path is not None:
        backbone.dump(backbone_path)

    return RunResult(
        best_length=best.length,
        best_tour=list(best.order),
        trials_used=trials_used,
        wall_time=time.perf_counter() - started,
        reached_optimum=None if optimum is None else best.length <= optimum,
        lower_bound=pre.lower_bound,
        gap=None if optimum is None else (best.length - optimum) / optimum,
        seed=params.seed,
        bandit_trace=trace,
    )


__all__ = ['RunResult', 'TrialRecord', 'solve', 'trial_rngs']

"""Tables, JSON and CSV artifacts for the command line."""

import json
import logging
from pathlib import Path
from typing import Sequence, Union

import pandas as pd

from lkbandit.solver import BatchSummary, RunResult

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ["instance", "mode", "success", "best", "average", "trials", "time"]


def summary_frame(summaries: Sequence[BatchSummary]) -> pd.DataFrame:
    return pd.DataFrame([s.as_row() for s in summaries], columns=SUMMARY_COLUMNS)


def cumulative_gap_frame(summaries: Sequence[BatchSummary]) -> pd.DataFrame:
    """Running sum over instances of each mode's mean gap; one column per mode.

    Instances without a known optimum are left out.
    """
    rows = [
        {"instance": s.instance, "mode": s.mode, "gap": s.mean_gap}
        for s in summaries if s.mean_gap is not None
    ]
    if not rows:
        return pd.DataFrame()
    frame = pd.DataFrame(rows)
    modes = list(dict.fromkeys(frame["mode"]))
    instances = list(dict.fromkeys(frame["instance"]))
    table = frame.pivot(index="instance", columns="mode", values="gap").reindex(index=instances, columns=modes)
    return table.cumsum()


def format_table(frame: pd.DataFrame, index: bool = True) -> str:
    if frame.empty:
        return "(no rows)"
    return frame.to_string(index=index, float_format=lambda v: f"{v:.4f}" if abs(v) < 1 else f"{v:.1f}")


def write_json(path: Union[str, Path], payload: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(payload, f, indent=2)
    logger.info(f"Wrote results to {path}")


def trace_frame(results: Sequence[RunResult], m: int) -> pd.DataFrame:
    """Per-trial bandit records of every run; arms are numbered from 1."""
    value_columns = [f"V_{i + 1}" for i in range(m)]
    rows = []
    for run, result in enumerate(results, start=1):
        for record in result.bandit_trace or []:
            row = {"run": run, "trial": record.trial, "arm": record.arm + 1, "w": record.w, "reward": record.reward}
            row.update(zip(value_columns, record.values))
            rows.append(row)
    return pd.DataFrame(rows, columns=["run", "trial", "arm", "w", "reward"] + value_columns)


def write_trace(path: Union[str, Path], results: Sequence[RunResult], m: int) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = trace_frame(results, m)
    frame.to_csv(path, index=False)
    logger.info(f"Wrote {len(frame)} bandit trace rows to {path}")


__all__ = [
    'summary_frame', 'cumulative_gap_frame', 'format_table',
    'write_json', 'trace_frame', 'write_trace',
]

"""Solver parameters and the search modes they select."""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from lkbandit.config import Config
from lkbandit.errors import UsageError


class ModeKind(str, Enum):
    MABB = "mabb"
    LKH = "lkh"
    FIXED_W = "fixed-w"


@dataclass(frozen=True)
class Mode:
    """How candidate lists are ordered after the warm-up trials."""

    kind: ModeKind
    w: Optional[float] = None

    @property
    def label(self) -> str:
        if self.kind is ModeKind.FIXED_W:
            return f"fixed-w={self.w:g}"
        return self.kind.value

    @property
    def uses_backbone(self) -> bool:
        return self.kind is not ModeKind.LKH

    def __str__(self) -> str:
        return self.label


def parse_mode(text: str) -> Mode:
    """Parse ``mabb``, ``lkh`` or ``fixed-w=X`` with X in [0, 1].

    Raises:
        UsageError: for any other string.
    """
    value = text.strip().lower()
    if value == ModeKind.MABB.value:
        return Mode(ModeKind.MABB)
    if value == ModeKind.LKH.value:
        return Mode(ModeKind.LKH)
    prefix = ModeKind.FIXED_W.value + "="
    if value.startswith(prefix):
        try:
            w = float(value[len(prefix):])
        except ValueError:
            raise UsageError(f"Bad weight in mode {text!r}")
        if not 0.0 <= w <= 1.0:
            raise UsageError(f"Fixed weight must lie in [0, 1], got {w}")
        return Mode(ModeKind.FIXED_W, w)
    raise UsageError(f"Unknown mode {text!r}; expected mabb, lkh or fixed-w=X")


@dataclass(frozen=True)
class Params:
    """Everything one run needs besides the instance."""

    max_trials: Optional[int] = None
    bs: int = 100
    m: int = 5
    s: float = 0.06
    c: float = 20.0
    gamma: float = 0.998
    candidate_size: int = 5
    k_max: int = 5
    seed: int = 1
    mode: Mode = Mode(ModeKind.MABB)

    def validate(self) -> None:
        """Raise UsageError for values no run can use."""
        if self.max_trials is not None and self.max_trials < 1:
            raise UsageError(f"max_trials must be positive, got {self.max_trials}")
        if self.bs < 0:
            raise UsageError(f"bs must be non-negative, got {self.bs}")
        if self.m < 2:
            raise UsageError(f"The bandit needs at least 2 arms, got {self.m}")
        if not 0.0 < self.s <= 1.0:
            raise UsageError(f"Step size must lie in (0, 1], got {self.s}")
        if self.c < 0:
            raise UsageError(f"Exploration bias must be non-negative, got {self.c}")
        if not 0.0 < self.gamma <= 1.0:
            raise UsageError(f"gamma must lie in (0, 1], got {self.gamma}")
        if self.candidate_size < 1:
            raise UsageError(f"candidate_size must be positive, got {self.candidate_size}")
        if self.k_max < 2:
            raise UsageError(f"k_max must be at least 2, got {self.k_max}")

    def trials_for(self, n: int) -> int:
        return self.max_trials if self.max_trials is not None else n

    def with_seed(self, seed: int) -> "Params":
        return replace(self, seed=seed)

    @classmethod
    def from_config(cls, config: Config, **overrides) -> "Params":
        """Build parameters from config values, with non-None overrides winning."""
        values = {
            "max_trials": config.get("max_trials"),
            "bs": config.get("bs"),
            "m": config.get("arms"),
            "s": config.get("step_size"),
            "c": config.get("ucb_c"),
            "gamma": config.get("gamma"),
            "candidate_size": config.get("candidate_size"),
            "k_max": config.get("k_max"),
            "seed": config.get("seed"),
            "mode": config.get("mode"),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        if isinstance(values["mode"], str):
            values["mode"] = parse_mode(values["mode"])
        params = cls(**values)
        params.validate()
        return params


__all__ = ['ModeKind', 'Mode', 'parse_mode', 'Params']

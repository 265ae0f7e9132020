"""bd-values and the normalized blend of alpha and bd used to order candidates."""

from dataclasses import dataclass

from lkbandit.backbone import BackboneStore
from lkbandit.candidate import Candidate, CandidateSets, Scorer
from lkbandit.errors import UsageError


def bd_value(d: int, b: float) -> float:
    """Distance discounted by backbone frequency: (1 - b) * d."""
    return (1.0 - b) * d


def _normalized(value: float, low: float, high: float) -> float:
    if high <= low:
        return 0.0
    return (value - low) / (high - low)


@dataclass(frozen=True)
class MetricSnapshot:
    """Ranges of alpha and bd over the candidate edges, plus the weight in force."""

    alpha_min: float
    alpha_max: float
    bd_min: float
    bd_max: float
    w: float

    def __post_init__(self):
        if not 0.0 <= self.w <= 1.0:
            raise UsageError(f"Weight must lie in [0, 1], got {self.w}")


def combined_score(alpha: float, bd: float, snap: MetricSnapshot) -> float:
    """w * alpha' + (1 - w) * bd', each term min-max normalized; a flat range normalizes to 0."""
    alpha_n = _normalized(alpha, snap.alpha_min, snap.alpha_max)
    bd_n = _normalized(bd, snap.bd_min, snap.bd_max)
    return snap.w * alpha_n + (1.0 - snap.w) * bd_n


def snapshot_ranges(sets: CandidateSets, backbone: BackboneStore, w: float) -> MetricSnapshot:
    alphas = []
    bds = []
    for city, cand in sets.edges():
        alphas.append(cand.alpha)
        bds.append(bd_value(cand.dist, backbone.frequency(city, cand.neighbor)))
    return MetricSnapshot(
        alpha_min=min(alphas),
        alpha_max=max(alphas),
        bd_min=min(bds),
        bd_max=max(bds),
        w=w,
    )


def backbone_scorer(backbone: BackboneStore, snap: MetricSnapshot) -> Scorer:
    """Scorer for resort_candidates that ranks edges by the blended metric."""

    def score(city: int, cand: Candidate) -> float:
        bd = bd_value(cand.dist, backbone.frequency(city, cand.neighbor))
        return combined_score(cand.alpha, bd, snap)

    return score


__all__ = ['bd_value', 'MetricSnapshot', 'combined_score', 'snapshot_ranges', 'backbone_scorer']

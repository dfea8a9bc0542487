"""Decision support for ranking surgical-robot trajectory plans.

A pure TOPSIS engine with constraint filtering, an adaptive optimizer
that tunes criterion weights from operator feedback, an event-sourced
session layer fed by (simulated) robot telemetry, and an HTTP service
plus CLI around it all.
"""

from .adaptive import (
    Alert,
    FeedbackEvent,
    Recommendation,
    Verdict,
    check_selection,
    optimize_trajectory_plan,
    update_weights,
)
from .errors import PlanRankError
from .model import (
    Alternative,
    BoundKind,
    CriteriaSet,
    Criterion,
    DecisionMatrix,
    Direction,
    IdealPair,
    Ranking,
    Threshold,
    Violation,
    WeightedNormalizedMatrix,
)
from .scenarios import Scenario, load_scenario
from .session import Session, replay_log
from .simulator import final_matrix, generate_stream
from .telemetry import TelemetryFrame, parse_frame
from .topsis import (
    apply_weights,
    closeness_scores,
    filter_feasible,
    ideal_points,
    normalize,
    rank,
    topsis,
)

__version__ = "0.1.0"

__all__ = [
    "Alert",
    "Alternative",
    "BoundKind",
    "CriteriaSet",
    "Criterion",
    "DecisionMatrix",
    "Direction",
    "FeedbackEvent",
    "IdealPair",
    "PlanRankError",
    "Ranking",
    "Recommendation",
    "Scenario",
    "Session",
    "TelemetryFrame",
    "Threshold",
    "Verdict",
    "Violation",
    "WeightedNormalizedMatrix",
    "apply_weights",
    "check_selection",
    "closeness_scores",
    "filter_feasible",
    "final_matrix",
    "generate_stream",
    "ideal_points",
    "load_scenario",
    "normalize",
    "optimize_trajectory_plan",
    "parse_frame",
    "rank",
    "replay_log",
    "topsis",
    "update_weights",
    "__version__",
]

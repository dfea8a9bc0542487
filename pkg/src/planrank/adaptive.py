"""Feedback-driven optimization over live session state.

The optimizer re-scores the current decision matrix on every revision,
compares operator selections against the standing recommendation, and
adapts criterion weights when the operator overrides: criteria on which
the chosen alternative outperforms the recommended one get a
multiplicative boost, after which weights are renormalized onto the
simplex with a floor that keeps any criterion from being silenced
permanently. Accepted selections never change weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional, Sequence

import numpy as np

from .errors import UnknownAlternative
from .model import DecisionMatrix, Ranking, Violation
from .topsis import apply_weights, ideal_points, normalize

if TYPE_CHECKING:  # pragma: no cover
    from .session import Session

# multiplicative boost applied to out-performing criteria on an override
DEFAULT_LEARNING_RATE = 0.1
# no weight ever renormalizes below WEIGHT_FLOOR / (1 + n * WEIGHT_FLOOR)
WEIGHT_FLOOR = 0.01


class Verdict(str, Enum):
    ACCEPTED = "accepted"
    OVERRIDDEN = "overridden"


@dataclass(frozen=True)
class Recommendation:
    """Result of scoring one matrix revision of a session."""

    session_id: str
    ranking: Ranking
    recommended_id: int
    generated_at: int
    matrix_revision: int

    def __post_init__(self):
        if self.recommended_id != self.ranking.best_id:
            raise ValueError("recommended_id must equal ranking.best_id")

    def to_payload(self) -> dict:
        return {
            "session": self.session_id,
            "revision": self.matrix_revision,
            "recommended_id": self.recommended_id,
            "generated_at": self.generated_at,
            "ranking": self.ranking.to_payload(),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "Recommendation":
        return cls(
            session_id=payload["session"],
            ranking=Ranking.from_payload(payload["ranking"]),
            recommended_id=payload["recommended_id"],
            generated_at=payload["generated_at"],
            matrix_revision=payload["revision"],
        )


@dataclass(frozen=True)
class FeedbackEvent:
    """Operator reaction to a recommendation."""

    session_id: str
    recommended_id: int
    chosen_id: int
    verdict: Verdict
    timestamp: int

    def __post_init__(self):
        accepted = self.chosen_id == self.recommended_id
        if accepted != (self.verdict is Verdict.ACCEPTED):
            raise ValueError("verdict must be accepted iff chosen equals recommended")

    def to_payload(self) -> dict:
        return {
            "session": self.session_id,
            "recommended_id": self.recommended_id,
            "chosen_id": self.chosen_id,
            "verdict": self.verdict.value,
            "ts": self.timestamp,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "FeedbackEvent":
        return cls(payload["session"], payload["recommended_id"], payload["chosen_id"],
                   Verdict(payload["verdict"]), payload["ts"])


@dataclass(frozen=True)
class Alert:
    """Raised to the operator for suboptimal or infeasible selections.

    An infeasible chosen alternative carries no closeness score; it is
    floored at 0 for the gap so score_gap stays nonnegative.
    """

    session_id: str
    chosen_id: int
    recommended_id: int
    score_gap: float
    violations: tuple[Violation, ...] = ()

    def __post_init__(self):
        if self.score_gap < 0:
            raise ValueError("score_gap must be nonnegative")

    def to_payload(self) -> dict:
        return {
            "session": self.session_id,
            "chosen_id": self.chosen_id,
            "recommended_id": self.recommended_id,
            "score_gap": self.score_gap,
            "violations": [v.to_payload() for v in self.violations],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "Alert":
        return cls(payload["session"], payload["chosen_id"], payload["recommended_id"],
                   payload["score_gap"],
                   tuple(Violation.from_payload(v) for v in payload["violations"]))


def improved_criteria(
    matrix: DecisionMatrix, chosen_id: int, recommended_id: int
) -> tuple[int, ...]:
    """Column indices where the chosen row sits strictly closer to A+.

    Comparison happens in weighted-normalized space with the matrix's
    own weights; a zero-weight column can never qualify.
    """
    normalized, _ = normalize(matrix)
    weighted = apply_weights(normalized, matrix.criteria)
    ideals = ideal_points(weighted)
    v = np.asarray(weighted.values)
    pos = np.asarray(ideals.positive)
    ids = matrix.ids()
    chosen_row = v[ids.index(chosen_id)]
    rec_row = v[ids.index(recommended_id)]
    closer = np.abs(chosen_row - pos) < np.abs(rec_row - pos)
    return tuple(int(j) for j in np.flatnonzero(closer))


def update_weights(
    weights: Sequence[float],
    feedback: FeedbackEvent,
    matrix: DecisionMatrix,
    learning_rate: float = DEFAULT_LEARNING_RATE,
) -> tuple[float, ...]:
    """Adapt weights after operator feedback.

    Accepted feedback returns the input unchanged. On an override, each
    criterion where the chosen alternative beats the recommended one is
    boosted by (1 + learning_rate); the vector is renormalized, clamped
    to the floor, and renormalized again so it stays on the simplex with
    every weight >= floor / (1 + n * floor). An override that beats the
    recommendation on no criterion is a no-op.
    """
    weights = tuple(float(w) for w in weights)
    if feedback.verdict is Verdict.ACCEPTED:
        return weights
    if not (0.0 < learning_rate <= 1.0):
        raise ValueError("learning_rate must be in (0, 1]")
    scored = DecisionMatrix(matrix.criteria.with_weights(weights), matrix.alternatives)
    boost = improved_criteria(scored, feedback.chosen_id, feedback.recommended_id)
    if not boost:
        return weights
    boosted = [w * (1.0 + learning_rate) if j in boost else w
               for j, w in enumerate(weights)]
    total = sum(boosted)
    renormalized = [w / total for w in boosted]
    clamped = [max(w, WEIGHT_FLOOR) for w in renormalized]
    total = sum(clamped)
    return tuple(w / total for w in clamped)


def row_violations(matrix: DecisionMatrix, alt_id: int) -> tuple[Violation, ...]:
    """Threshold violations for one alternative of the matrix."""
    alt = matrix.alternative(alt_id)
    out = []
    for j, crit in enumerate(matrix.criteria):
        if crit.threshold is not None and crit.threshold.violated_by(alt.values[j]):
            out.append(Violation(crit.id, alt.values[j], crit.threshold.bound,
                                 crit.threshold.kind))
    return tuple(out)


def optimize_trajectory_plan(session: "Session") -> Recommendation:
    """Recommendation for the session's current matrix revision.

    Sessions re-score on every revision and log the result, so this
    reads the standing outcome; EmptySession, NotReady and AllInfeasible
    propagate from the session.
    """
    return session.recommendation()


def check_selection(session: "Session", chosen_id: int) -> Optional[Alert]:
    """Compare an operator selection against the current recommendation.

    Returns None when the selection matches the recommendation and is
    feasible; otherwise an Alert with the (nonnegative) score gap and
    any threshold violations of the chosen alternative.
    """
    matrix, _ = session.materialize()
    if matrix is None or chosen_id not in matrix.ids():
        raise UnknownAlternative(f"alternative {chosen_id} not in session matrix")
    rec = session.recommendation()
    violations = row_violations(matrix, chosen_id)
    if chosen_id == rec.recommended_id and not violations:
        return None
    best_score = rec.ranking.score_of(rec.recommended_id)
    try:
        chosen_score = rec.ranking.score_of(chosen_id)
    except KeyError:  # infeasible, excluded from scoring
        chosen_score = 0.0
    return Alert(
        session_id=session.id,
        chosen_id=chosen_id,
        recommended_id=rec.recommended_id,
        score_gap=best_score - chosen_score,
        violations=violations,
    )

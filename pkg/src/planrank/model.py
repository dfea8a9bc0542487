"""Domain types for the ranking engine.

Criteria carry an optimization direction, a normalized weight and an
optional feasibility threshold in raw measurement units. A decision
matrix is an ordered set of alternatives (rows) measured against an
ordered set of criteria (columns). All values are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from .errors import InvalidCriteria, InvalidMatrix

log = logging.getLogger("planrank")

WEIGHT_SUM_TOL = 1e-12
# warn when submitted percent priorities drift more than this from 100
PRIORITY_DRIFT_WARN = 0.5


class Direction(str, Enum):
    """Whether larger (benefit) or smaller (cost) raw values are preferable."""

    BENEFIT = "benefit"
    COST = "cost"


class BoundKind(str, Enum):
    """Threshold sense: MAX keeps values <= bound, MIN keeps values >= bound."""

    MAX = "max"
    MIN = "min"


@dataclass(frozen=True)
class Threshold:
    bound: float
    kind: BoundKind

    def violated_by(self, value: float) -> bool:
        if self.kind is BoundKind.MAX:
            return value > self.bound
        return value < self.bound


@dataclass(frozen=True)
class Criterion:
    id: str
    direction: Direction
    weight: float
    name: str = ""
    threshold: Optional[Threshold] = None

    def __post_init__(self):
        if not self.id:
            raise InvalidCriteria("criterion id must be non-empty")
        if not math.isfinite(self.weight) or self.weight < 0:
            raise InvalidCriteria(f"criterion {self.id!r}: weight must be finite and >= 0")


@dataclass(frozen=True)
class CriteriaSet:
    """Ordered criteria; the order defines decision-matrix columns."""

    criteria: tuple[Criterion, ...]

    def __post_init__(self):
        object.__setattr__(self, "criteria", tuple(self.criteria))
        if len(self.criteria) < 1:
            raise InvalidCriteria("at least one criterion required")
        ids = [c.id for c in self.criteria]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise InvalidCriteria(f"duplicate criterion ids: {dupes}")
        total = sum(c.weight for c in self.criteria)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidCriteria(f"weights must sum to 1, got {total!r}")

    @classmethod
    def from_priorities(cls, criteria: Iterable[Criterion]) -> "CriteriaSet":
        """Build a set from raw priorities (e.g. table percentages).

        Each ``Criterion.weight`` is read as an unnormalized priority and
        divided by the total. Totals far from 100 are accepted but logged,
        since table priorities are conventionally percentages.
        """
        items = tuple(criteria)
        if not items:
            raise InvalidCriteria("at least one criterion required")
        total = sum(c.weight for c in items)
        if total <= 0:
            raise InvalidCriteria("priorities must not be all zero")
        # a sum of ~1 is an already-normalized weight vector, not percent drift
        if abs(total - 100.0) > PRIORITY_DRIFT_WARN and abs(total - 1.0) > 1e-9:
            log.warning("priorities sum to %s, normalizing to 1", total)
        return cls(tuple(
            Criterion(c.id, c.direction, c.weight / total, c.name, c.threshold)
            for c in items
        ))

    def with_weights(self, weights: Sequence[float]) -> "CriteriaSet":
        """Same criteria with a replacement (already normalized) weight vector."""
        if len(weights) != len(self.criteria):
            raise InvalidCriteria("weight vector length mismatch")
        return CriteriaSet(tuple(
            Criterion(c.id, c.direction, float(w), c.name, c.threshold)
            for c, w in zip(self.criteria, weights)
        ))

    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.criteria)

    def weights(self) -> tuple[float, ...]:
        return tuple(c.weight for c in self.criteria)

    def index_of(self, criterion_id: str) -> int:
        for i, c in enumerate(self.criteria):
            if c.id == criterion_id:
                return i
        raise KeyError(criterion_id)

    def __len__(self) -> int:
        return len(self.criteria)

    def __iter__(self):
        return iter(self.criteria)


@dataclass(frozen=True)
class Alternative:
    """One candidate trajectory plan: a row of raw measurements."""

    id: int
    values: tuple[float, ...]
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not isinstance(self.id, int) or isinstance(self.id, bool) or self.id < 1:
            raise InvalidMatrix(f"alternative id must be an integer >= 1, got {self.id!r}")
        if not all(math.isfinite(v) for v in self.values):
            raise InvalidMatrix(f"alternative {self.id}: values must be finite")


@dataclass(frozen=True)
class DecisionMatrix:
    criteria: CriteriaSet
    alternatives: tuple[Alternative, ...]

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        if len(self.alternatives) < 1:
            raise InvalidMatrix("at least one alternative required")
        n = len(self.criteria)
        for alt in self.alternatives:
            if len(alt.values) != n:
                raise InvalidMatrix(
                    f"alternative {alt.id} has {len(alt.values)} values, expected {n}"
                )
        ids = [a.id for a in self.alternatives]
        if len(set(ids)) != len(ids):
            raise InvalidMatrix("alternative ids must be unique")

    def ids(self) -> tuple[int, ...]:
        return tuple(a.id for a in self.alternatives)

    def rows(self) -> tuple[tuple[float, ...], ...]:
        return tuple(a.values for a in self.alternatives)

    def alternative(self, alt_id: int) -> Alternative:
        for a in self.alternatives:
            if a.id == alt_id:
                return a
        raise KeyError(alt_id)


@dataclass(frozen=True)
class WeightedNormalizedMatrix:
    """v_ij = w_j * r_ij; |v_ij| never exceeds w_j after L2 normalization."""

    values: tuple[tuple[float, ...], ...]
    criteria: CriteriaSet


@dataclass(frozen=True)
class IdealPair:
    """Per-column best (positive) and worst (negative) weighted values."""

    positive: tuple[float, ...]
    negative: tuple[float, ...]


@dataclass(frozen=True)
class Violation:
    criterion_id: str
    value: float
    bound: float
    kind: BoundKind

    def to_payload(self) -> dict:
        return {
            "criterion": self.criterion_id,
            "value": self.value,
            "bound": self.bound,
            "kind": self.kind.value,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "Violation":
        return cls(payload["criterion"], payload["value"], payload["bound"],
                   BoundKind(payload["kind"]))


# report: alternative id -> violations; empty tuple never appears
ViolationReport = dict[int, tuple[Violation, ...]]


@dataclass(frozen=True)
class Ranking:
    """Closeness scores and ordering for the feasible alternatives.

    ``ids``/``scores`` are row-aligned with the scored matrix; ``order``
    sorts ids by descending score with ties broken by ascending id.
    ``excluded`` lists infeasible alternatives with their violations.
    """

    ids: tuple[int, ...]
    scores: tuple[float, ...]
    order: tuple[int, ...]
    best_id: int
    degenerate: bool = False
    zero_columns: tuple[str, ...] = ()
    excluded: tuple[tuple[int, tuple[Violation, ...]], ...] = ()

    def score_of(self, alt_id: int) -> float:
        for i, s in zip(self.ids, self.scores):
            if i == alt_id:
                return s
        raise KeyError(alt_id)

    def position_of(self, alt_id: int) -> int:
        """0-based rank position (0 = best)."""
        return self.order.index(alt_id)

    def to_payload(self) -> dict:
        return {
            "ids": list(self.ids),
            "scores": list(self.scores),
            "order": list(self.order),
            "best_id": self.best_id,
            "degenerate": self.degenerate,
            "zero_columns": list(self.zero_columns),
            "excluded": [
                {"id": alt_id, "violations": [v.to_payload() for v in violations]}
                for alt_id, violations in self.excluded
            ],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "Ranking":
        return cls(
            ids=tuple(payload["ids"]),
            scores=tuple(payload["scores"]),
            order=tuple(payload["order"]),
            best_id=payload["best_id"],
            degenerate=payload["degenerate"],
            zero_columns=tuple(payload["zero_columns"]),
            excluded=tuple(
                (e["id"], tuple(Violation.from_payload(v) for v in e["violations"]))
                for e in payload["excluded"]
            ),
        )


def _threshold_to_payload(threshold: Optional[Threshold]):
    if threshold is None:
        return None
    return {"bound": threshold.bound, "kind": threshold.kind.value}


def _threshold_from_payload(payload) -> Optional[Threshold]:
    if payload is None:
        return None
    try:
        return Threshold(float(payload["bound"]), BoundKind(payload["kind"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidCriteria(f"bad threshold {payload!r}: {exc}") from None


def criteria_to_payload(criteria: CriteriaSet) -> list[dict]:
    """Exact-weight form used in event logs and API responses."""
    return [
        {
            "id": c.id,
            "name": c.name,
            "direction": c.direction.value,
            "weight": c.weight,
            "threshold": _threshold_to_payload(c.threshold),
        }
        for c in criteria
    ]


def criteria_from_payload(payload: list) -> CriteriaSet:
    """Inverse of criteria_to_payload; weights taken verbatim."""
    items = []
    for entry in payload:
        items.append(Criterion(
            id=entry["id"],
            direction=Direction(entry["direction"]),
            weight=float(entry["weight"]),
            name=entry.get("name", ""),
            threshold=_threshold_from_payload(entry.get("threshold")),
        ))
    return CriteriaSet(tuple(items))


def criteria_from_priority_payload(payload) -> CriteriaSet:
    """Operator-submitted form: raw priorities normalized into weights.

    Accepts a bare list or {"criteria": [...]}; each entry needs id,
    direction and priority, with optional name and threshold.
    """
    if isinstance(payload, dict):
        payload = payload.get("criteria")
    if not isinstance(payload, list) or not payload:
        raise InvalidCriteria("expected a non-empty list of criteria")
    items = []
    for entry in payload:
        if not isinstance(entry, dict):
            raise InvalidCriteria(f"criterion entry must be an object, got {entry!r}")
        try:
            crit_id = entry["id"]
            direction = Direction(entry["direction"])
            priority = float(entry["priority"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidCriteria(f"bad criterion entry {entry!r}: {exc}") from None
        if not isinstance(crit_id, str):
            raise InvalidCriteria(f"criterion id must be a string, got {crit_id!r}")
        if not math.isfinite(priority) or priority < 0:
            raise InvalidCriteria(f"criterion {crit_id!r}: priority must be finite and >= 0")
        items.append(Criterion(
            id=crit_id,
            direction=direction,
            weight=priority,
            name=entry.get("name", ""),
            threshold=_threshold_from_payload(entry.get("threshold")),
        ))
    return CriteriaSet.from_priorities(items)

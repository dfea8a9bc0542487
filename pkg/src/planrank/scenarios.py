"""Built-in and file-based simulation scenarios.

A scenario bundles the criteria template (directions, table priorities,
optional thresholds), the alternative count, the pinned rows that must
appear exactly in the final matrix, and the noise model used to
synthesize everything else: per-criterion sampling ranges, optional
per-row range overrides, and uniform jitter amplitudes applied while a
stream converges.

The two built-in procedures pin only their published extreme points;
remaining rows are synthesized inside bands chosen so no synthesized
alternative dominates the pinned best row and the qualitative outcome
(pinned best ranked first) is preserved for any seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from .errors import InvalidScenarioFile, UnknownScenario
from .model import (
    BoundKind,
    CriteriaSet,
    Criterion,
    Direction,
    Threshold,
)

Range = tuple[float, float]


@dataclass(frozen=True)
class ScenarioCriterion:
    """Criteria-template entry: raw table priority plus sampling bounds."""

    id: str
    name: str
    direction: Direction
    priority: float
    value_range: Range
    jitter: float = 0.0
    threshold: Optional[Threshold] = None


@dataclass(frozen=True)
class Scenario:
    name: str
    criteria: tuple[ScenarioCriterion, ...]
    alternative_count: int = 12
    pinned: Mapping[int, Mapping[str, float]] = field(default_factory=dict)
    row_ranges: Mapping[int, Mapping[str, Range]] = field(default_factory=dict)
    frame_interval_ms: int = 250
    best_id: Optional[int] = None

    def __post_init__(self):
        if not self.criteria:
            raise InvalidScenarioFile(f"scenario {self.name!r} defines no criteria")
        ids = [c.id for c in self.criteria]
        if len(set(ids)) != len(ids):
            raise InvalidScenarioFile(f"duplicate criterion ids in scenario {self.name!r}")
        if self.alternative_count < max(len(self.pinned), 1):
            raise InvalidScenarioFile("alternative count below number of pinned rows")
        for crit in self.criteria:
            lo, hi = crit.value_range
            if not lo <= hi:
                raise InvalidScenarioFile(f"criterion {crit.id!r}: bad range {crit.value_range}")
            if crit.jitter < 0:
                raise InvalidScenarioFile(f"criterion {crit.id!r}: jitter must be >= 0")
        for alt_id, cells in self.pinned.items():
            if not 1 <= alt_id <= self.alternative_count:
                raise InvalidScenarioFile(f"pinned row {alt_id} outside 1..{self.alternative_count}")
            for crit_id, value in cells.items():
                crit = self._criterion(crit_id)
                lo, hi = self.plausible_span(crit)
                if not lo <= value <= hi:
                    raise InvalidScenarioFile(
                        f"pinned {crit_id}={value} for row {alt_id} outside [{lo}, {hi}]")
        if self.best_id is not None and self.best_id not in self.pinned:
            raise InvalidScenarioFile("best_id must be a pinned row")

    def _criterion(self, crit_id: str) -> ScenarioCriterion:
        for crit in self.criteria:
            if crit.id == crit_id:
                return crit
        raise InvalidScenarioFile(f"unknown criterion {crit_id!r} in scenario {self.name!r}")

    def plausible_span(self, crit: ScenarioCriterion) -> Range:
        """Acceptance window for values: [0, 1] for rate-like criteria."""
        lo, hi = crit.value_range
        for cells in self.row_ranges.values():
            if crit.id in cells:
                lo = min(lo, cells[crit.id][0])
                hi = max(hi, cells[crit.id][1])
        if 0.0 <= lo and hi <= 1.0:
            return 0.0, 1.0
        return lo, hi

    def pinned_best_id(self) -> int:
        if self.best_id is not None:
            return self.best_id
        if not self.pinned:
            raise InvalidScenarioFile(f"scenario {self.name!r} pins no rows")
        return min(self.pinned)

    def criteria_set(self) -> CriteriaSet:
        """Criteria with table priorities normalized into weights."""
        return CriteriaSet.from_priorities(tuple(
            Criterion(c.id, c.direction, c.priority, c.name, c.threshold)
            for c in self.criteria
        ))

    def sampling_range(self, alt_id: int, crit_id: str) -> Range:
        override = self.row_ranges.get(alt_id, {})
        if crit_id in override:
            return override[crit_id]
        return self._criterion(crit_id).value_range


def _whipple() -> Scenario:
    # pancreaticoduodenectomy: cancer spread carries most of the priority,
    # pinned rows hold the published best/worst (cancer, vessel) pairs
    return Scenario(
        name="whipple",
        criteria=(
            ScenarioCriterion("clarity", "3D visual clarity (%)", Direction.BENEFIT,
                              10, (0.15, 0.85), jitter=0.02),
            ScenarioCriterion("liver_risk", "liver removal risk level (%)", Direction.COST,
                              10, (0.05, 0.40), jitter=0.02),
            ScenarioCriterion("vessel", "blood vessel exposure or reconstruction (%)",
                              Direction.COST, 20, (0.12, 0.38), jitter=0.02),
            ScenarioCriterion("cancer", "cancerous spread level (%)", Direction.COST,
                              60, (0.15, 0.38), jitter=0.02),
        ),
        alternative_count=12,
        pinned={
            1: {"cancer": 0.07, "vessel": 0.05},
            12: {"cancer": 0.41, "vessel": 0.409},
        },
        row_ranges={
            1: {"clarity": (0.50, 0.85), "liver_risk": (0.05, 0.18)},
            12: {"clarity": (0.05, 0.25), "liver_risk": (0.25, 0.45)},
        },
        best_id=1,
    )


def _hepatectomy() -> Scenario:
    # right hepatectomy extension: EBL and visual clarity dominate; rows
    # 11 and 12 pin the published poor performers and sample badly on the
    # light criteria too, so every synthesized row dominates them
    return Scenario(
        name="hepatectomy",
        criteria=(
            ScenarioCriterion("jejunal", "jejunal mucosa (%)", Direction.BENEFIT,
                              10, (0.35, 0.90), jitter=0.02),
            ScenarioCriterion("bile_duct", "bile duct diameter (mm)", Direction.COST,
                              10, (2.0, 7.5), jitter=0.25),
            ScenarioCriterion("ebl", "estimated blood loss (EBL) (ml)", Direction.COST,
                              40, (0.12, 0.28), jitter=0.02),
            ScenarioCriterion("vc", "3D visualization clarity (%)", Direction.BENEFIT,
                              40, (0.25, 0.45), jitter=0.02),
        ),
        alternative_count=12,
        pinned={
            1: {"ebl": 0.03, "vc": 0.52},
            11: {"ebl": 0.43, "vc": 0.06},
            12: {"ebl": 0.30, "vc": 0.22},
        },
        row_ranges={
            1: {"jejunal": (0.40, 0.90), "bile_duct": (2.0, 7.0)},
            11: {"jejunal": (0.10, 0.30), "bile_duct": (8.0, 12.0)},
            12: {"jejunal": (0.10, 0.30), "bile_duct": (8.0, 12.0)},
        },
        best_id=1,
    )


BUILTIN_SCENARIOS = {
    "whipple": _whipple,
    "hepatectomy": _hepatectomy,
}


def load_scenario(name_or_path: str) -> Scenario:
    """Resolve a built-in scenario name or a scenario file path."""
    factory = BUILTIN_SCENARIOS.get(name_or_path)
    if factory is not None:
        return factory()
    path = Path(name_or_path)
    if path.suffix == ".json" or path.exists():
        return load_scenario_file(path)
    raise UnknownScenario(
        f"unknown scenario {name_or_path!r}; built-ins: {sorted(BUILTIN_SCENARIOS)}")


def load_scenario_file(path: str | Path) -> Scenario:
    """Parse a scenario JSON file (schema documented in the README)."""
    path = Path(path)
    if not path.exists():
        raise UnknownScenario(f"scenario file {path} does not exist")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidScenarioFile(f"cannot read {path}: {exc}") from None
    return scenario_from_payload(payload)


def scenario_from_payload(payload: dict) -> Scenario:
    if not isinstance(payload, dict):
        raise InvalidScenarioFile("scenario must be a JSON object")
    try:
        criteria = []
        for entry in payload["criteria"]:
            threshold = entry.get("threshold")
            if threshold is not None:
                threshold = Threshold(float(threshold["bound"]),
                                      BoundKind(threshold["kind"]))
            lo, hi = entry["range"]
            criteria.append(ScenarioCriterion(
                id=entry["id"],
                name=entry.get("name", ""),
                direction=Direction(entry["direction"]),
                priority=float(entry["priority"]),
                value_range=(float(lo), float(hi)),
                jitter=float(entry.get("jitter", 0.0)),
                threshold=threshold,
            ))
        pinned = {
            int(alt_id): {str(k): float(v) for k, v in cells.items()}
            for alt_id, cells in payload.get("pinned", {}).items()
        }
        row_ranges = {
            int(alt_id): {str(k): (float(r[0]), float(r[1])) for k, r in cells.items()}
            for alt_id, cells in payload.get("row_ranges", {}).items()
        }
        return Scenario(
            name=str(payload["name"]),
            criteria=tuple(criteria),
            alternative_count=int(payload.get("alternatives", 12)),
            pinned=pinned,
            row_ranges=row_ranges,
            frame_interval_ms=int(payload.get("frame_interval_ms", 250)),
            best_id=payload.get("best_id"),
        )
    except InvalidScenarioFile:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidScenarioFile(f"bad scenario payload: {exc}") from None

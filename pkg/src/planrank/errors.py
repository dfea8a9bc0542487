"""Error types shared across the engine, session layer, service and CLI.

Every error carries a stable machine-readable ``code`` that the HTTP
service echoes in error bodies and the CLI maps to exit codes.
"""

from __future__ import annotations


class PlanRankError(Exception):
    """Base class; ``code`` is the wire-visible identifier."""

    code = "Internal"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class InvalidRequest(PlanRankError):
    code = "InvalidRequest"


class InvalidCriteria(PlanRankError):
    code = "InvalidCriteria"


class InvalidMatrix(PlanRankError):
    code = "InvalidMatrix"


class AllInfeasible(PlanRankError):
    """Every alternative violates some threshold; carries the full report.

    ``report`` maps alternative id -> tuple of Violation.
    """

    code = "AllInfeasible"

    def __init__(self, report):
        self.report = report
        ids = ", ".join(str(i) for i in sorted(report))
        super().__init__(f"all alternatives infeasible: {ids}")


class EmptySession(PlanRankError):
    code = "EmptySession"


class UnknownAlternative(PlanRankError):
    code = "UnknownAlternative"


class MalformedFrame(PlanRankError):
    code = "MalformedFrame"


class UnknownCriterion(PlanRankError):
    code = "UnknownCriterion"


class NonFiniteValue(PlanRankError):
    code = "NonFiniteValue"


class SessionNotFound(PlanRankError):
    code = "SessionNotFound"


class DuplicateSession(PlanRankError):
    code = "DuplicateSession"


class NotReady(PlanRankError):
    code = "NotReady"


class CorruptLog(PlanRankError):
    """Event log failed the contiguity or parse check at ``sequence``."""

    code = "CorruptLog"

    def __init__(self, sequence: int, message: str = ""):
        self.sequence = sequence
        super().__init__(message or f"log corrupt at sequence {sequence}")


class UnknownScenario(PlanRankError):
    code = "UnknownScenario"


class InvalidScenarioFile(PlanRankError):
    code = "InvalidScenarioFile"

"""Deterministic, seeded telemetry stream generator.

Stands in for the robot's sensors at desk scale: given (scenario, seed,
frame count) it synthesizes a final decision matrix around the
scenario's pinned rows and emits frames whose values converge onto it,
jittering per the scenario noise model along the way. Identical inputs
yield byte-identical streams.

The final matrix honors two constraints: no synthesized alternative
dominates the pinned best row in every criterion, and the pinned best
row ranks first when the final matrix is scored. Offending rows are
deterministically resampled from the seed's substream until both hold.
"""

from __future__ import annotations

import random

from .model import Alternative, DecisionMatrix, Direction
from .scenarios import Scenario
from .telemetry import CellUpdate, TelemetryFrame
from .topsis import topsis

# resampling cap; generous, the built-in bands almost never trigger it
MAX_RESAMPLE = 500


def _dominates(a: tuple[float, ...], b: tuple[float, ...], directions) -> bool:
    """True when row a is at least as good as b everywhere, better somewhere."""
    strictly = False
    for va, vb, direction in zip(a, b, directions):
        better, worse = (va > vb, va < vb) if direction is Direction.BENEFIT \
            else (va < vb, va > vb)
        if worse:
            return False
        if better:
            strictly = True
    return strictly


def _sample_row(scenario: Scenario, rng: random.Random, alt_id: int) -> list[float]:
    row = []
    pinned = scenario.pinned.get(alt_id, {})
    for crit in scenario.criteria:
        if crit.id in pinned:
            row.append(pinned[crit.id])
        else:
            lo, hi = scenario.sampling_range(alt_id, crit.id)
            row.append(rng.uniform(lo, hi))
    return row


def final_matrix(scenario: Scenario, seed: int) -> DecisionMatrix:
    """Synthesize the converged decision matrix for (scenario, seed)."""
    rng = random.Random(seed)
    directions = tuple(c.direction for c in scenario.criteria)
    criteria = scenario.criteria_set()
    best_id = scenario.pinned_best_id()

    for _ in range(MAX_RESAMPLE):
        rows = {alt_id: _sample_row(scenario, rng, alt_id)
                for alt_id in range(1, scenario.alternative_count + 1)}
        best_row = tuple(rows[best_id])
        for alt_id in rows:
            if alt_id == best_id or alt_id in scenario.pinned:
                continue
            for _ in range(MAX_RESAMPLE):
                if not _dominates(tuple(rows[alt_id]), best_row, directions):
                    break
                rows[alt_id] = _sample_row(scenario, rng, alt_id)
            else:
                raise RuntimeError(
                    f"scenario {scenario.name!r}: cannot sample a non-dominating row")
        matrix = DecisionMatrix(criteria, tuple(
            Alternative(alt_id, tuple(rows[alt_id]))
            for alt_id in sorted(rows)
        ))
        if topsis(matrix).best_id == best_id:
            return matrix
    raise RuntimeError(
        f"scenario {scenario.name!r}: pinned best row never ranked first; "
        "widen the sampling bands")


def generate_stream(scenario: Scenario, seed: int, frame_count: int,
                    session_id: str = "sim") -> tuple[TelemetryFrame, ...]:
    """Telemetry frames converging on the seed's final matrix.

    Every frame is a full snapshot (a delta touching every cell); jitter
    decays linearly and the last frame carries the exact final values,
    so pinned cells land on their pinned values by the final frame.
    """
    if frame_count < 1:
        raise ValueError("frame_count must be >= 1")
    matrix = final_matrix(scenario, seed)
    jitter_rng = random.Random(seed * 1_000_003 + 1)
    spans = {c.id: scenario.plausible_span(c) for c in scenario.criteria}

    frames = []
    for step in range(frame_count):
        decay = 1.0 - (step + 1) / frame_count
        updates = []
        for alt in matrix.alternatives:
            for crit, value in zip(scenario.criteria, alt.values):
                if decay > 0.0 and crit.jitter > 0.0:
                    lo, hi = spans[crit.id]
                    noisy = value + crit.jitter * decay * jitter_rng.uniform(-1.0, 1.0)
                    value = min(max(noisy, lo), hi)
                updates.append(CellUpdate(alt.id, crit.id, value))
        frames.append(TelemetryFrame(
            session_id=session_id,
            ts=(step + 1) * scenario.frame_interval_ms,
            updates=tuple(updates),
        ))
    return tuple(frames)


def stream_to_lines(frames) -> str:
    """Frames as the newline-delimited wire format."""
    return "".join(frame.to_line() + "\n" for frame in frames)

"""Deterministic TOPSIS pipeline over a decision matrix.

Steps: constraint filtering, column-wise L2 normalization, weighting,
ideal/anti-ideal extraction per criterion direction, Euclidean
separations and closeness scoring C = S- / (S+ + S-), then a stable
descending sort with ties broken by ascending alternative id.

Degenerate inputs stay diagnosable instead of fatal: a zero-norm column
normalizes to zeros and is reported, and an alternative coinciding with
both ideals (single row, or all columns degenerate) scores 1 with the
ranking flagged degenerate. Everything here is a pure function of its
arguments; identical input bits give identical output bits.
"""

from __future__ import annotations

import numpy as np

from .errors import AllInfeasible
from .model import (
    CriteriaSet,
    DecisionMatrix,
    Direction,
    IdealPair,
    Ranking,
    Violation,
    ViolationReport,
    WeightedNormalizedMatrix,
)


def filter_feasible(matrix: DecisionMatrix) -> tuple[DecisionMatrix, ViolationReport]:
    """Drop alternatives violating any criterion threshold.

    Max-bound thresholds keep values <= bound, min-bound keep values >=
    bound. Raises AllInfeasible (carrying the full report) when nothing
    survives; ids of kept alternatives are preserved.
    """
    report: ViolationReport = {}
    kept = []
    for alt in matrix.alternatives:
        violations = []
        for j, crit in enumerate(matrix.criteria):
            if crit.threshold is not None and crit.threshold.violated_by(alt.values[j]):
                violations.append(Violation(
                    crit.id, alt.values[j], crit.threshold.bound, crit.threshold.kind
                ))
        if violations:
            report[alt.id] = tuple(violations)
        else:
            kept.append(alt)
    if not kept:
        raise AllInfeasible(report)
    if not report:
        return matrix, report
    return DecisionMatrix(matrix.criteria, tuple(kept)), report


def normalize(matrix: DecisionMatrix) -> tuple[np.ndarray, tuple[str, ...]]:
    """Column-wise vector normalization r_ij = x_ij / ||x_j||_2.

    Returns the normalized m x n array and the ids of zero-norm columns,
    whose entries all map to 0 (a diagnosed degenerate case, not an
    error: a sensor stuck at zero must not crash a live session).
    """
    x = np.asarray(matrix.rows(), dtype=float)
    norms = np.sqrt((x * x).sum(axis=0))
    zero = norms == 0.0
    safe = np.where(zero, 1.0, norms)
    r = x / safe
    zero_ids = tuple(c.id for c, z in zip(matrix.criteria, zero) if z)
    return r, zero_ids


def apply_weights(normalized: np.ndarray, criteria: CriteriaSet) -> WeightedNormalizedMatrix:
    """v_ij = w_j * r_ij."""
    w = np.asarray(criteria.weights(), dtype=float)
    v = normalized * w
    return WeightedNormalizedMatrix(tuple(map(tuple, v.tolist())), criteria)


def ideal_points(weighted: WeightedNormalizedMatrix) -> IdealPair:
    """Column extremes: best weighted value per direction and its opposite."""
    v = np.asarray(weighted.values, dtype=float)
    pos = np.empty(v.shape[1])
    neg = np.empty(v.shape[1])
    for j, crit in enumerate(weighted.criteria):
        col = v[:, j]
        if crit.direction is Direction.BENEFIT:
            pos[j], neg[j] = col.max(), col.min()
        else:
            pos[j], neg[j] = col.min(), col.max()
    return IdealPair(tuple(pos.tolist()), tuple(neg.tolist()))


def closeness_scores(
    weighted: WeightedNormalizedMatrix, ideals: IdealPair
) -> tuple[tuple[float, ...], bool]:
    """Per-row closeness C = S- / (S+ + S-) with Euclidean separations.

    Rows with S+ + S- = 0 (coinciding with both ideals) score 1 and set
    the degenerate flag: the only feasible alternative must still be
    recommendable.
    """
    v = np.asarray(weighted.values, dtype=float)
    pos = np.asarray(ideals.positive)
    neg = np.asarray(ideals.negative)
    s_pos = np.sqrt(((v - pos) ** 2).sum(axis=1))
    s_neg = np.sqrt(((v - neg) ** 2).sum(axis=1))
    total = s_pos + s_neg
    collapsed = total == 0.0
    scores = np.where(collapsed, 1.0, s_neg / np.where(collapsed, 1.0, total))
    return tuple(scores.tolist()), bool(collapsed.any())


def rank(
    scores,
    ids,
    *,
    degenerate: bool = False,
    zero_columns: tuple[str, ...] = (),
    excluded: ViolationReport | None = None,
) -> Ranking:
    """Descending stable sort of ids by score, ties by ascending id."""
    scores = tuple(float(s) for s in scores)
    ids = tuple(ids)
    if len(scores) != len(ids):
        raise ValueError("scores and ids must align")
    by_id = dict(zip(ids, scores))
    order = tuple(sorted(ids, key=lambda a: (-by_id[a], a)))
    excluded_items = tuple(sorted((excluded or {}).items()))
    return Ranking(
        ids=ids,
        scores=scores,
        order=order,
        best_id=order[0],
        degenerate=degenerate,
        zero_columns=zero_columns,
        excluded=excluded_items,
    )


def topsis(matrix: DecisionMatrix) -> Ranking:
    """Full pipeline: filter, normalize, weight, score, rank.

    Propagates AllInfeasible from the filtering step.
    """
    kept, report = filter_feasible(matrix)
    normalized, zero_cols = normalize(kept)
    weighted = apply_weights(normalized, kept.criteria)
    ideals = ideal_points(weighted)
    scores, degenerate = closeness_scores(weighted, ideals)
    return rank(
        scores,
        kept.ids(),
        degenerate=degenerate,
        zero_columns=zero_cols,
        excluded=report,
    )

/**
 * Criteria editor model: uncommitted priority drafts the operator edits
 * with sliders. Priorities display as percentages that always total 100;
 * dragging one slider rescales the others proportionally. Commit blocks
 * client-side when the draft is invalid (negative or all-zero).
 */

import type { CriterionPayload, Direction, ThresholdPayload } from './types';

export interface CriterionDraft {
  id: string;
  name: string;
  direction: Direction;
  priority: number;
  threshold: ThresholdPayload | null;
}

export function draftFromCriteria(criteria: CriterionPayload[]): CriterionDraft[] {
  return criteria.map((c) => ({
    id: c.id,
    name: c.name,
    direction: c.direction,
    priority: c.weight * 100,
    threshold: c.threshold,
  }));
}

export function displayPercentages(draft: CriterionDraft[]): number[] {
  const total = draft.reduce((sum, d) => sum + d.priority, 0);
  if (total <= 0) return draft.map(() => 0);
  return draft.map((d) => (d.priority / total) * 100);
}

/**
 * Set one slider to a new percentage and rescale the rest so the total
 * stays at 100. When every other slider is at zero the remainder is
 * spread evenly.
 */
export function adjustPriority(
  draft: CriterionDraft[],
  index: number,
  percent: number,
): CriterionDraft[] {
  const clamped = Math.min(Math.max(percent, 0), 100);
  const othersTotal = draft.reduce(
    (sum, d, i) => (i === index ? sum : sum + d.priority),
    0,
  );
  const remainder = 100 - clamped;
  return draft.map((d, i) => {
    if (i === index) return { ...d, priority: clamped };
    const share = othersTotal > 0
      ? (d.priority / othersTotal) * remainder
      : remainder / (draft.length - 1);
    return { ...d, priority: share };
  });
}

export function draftError(draft: CriterionDraft[]): string | null {
  if (draft.length === 0) return 'no criteria to edit';
  if (draft.some((d) => d.priority < 0 || !Number.isFinite(d.priority))) {
    return 'priorities must be nonnegative';
  }
  if (draft.every((d) => d.priority === 0)) {
    return 'at least one priority must be positive';
  }
  return null;
}

/** Request body for PUT /sessions/{id}/criteria. */
export function commitPayload(draft: CriterionDraft[]): {
  criteria: Record<string, unknown>[];
} {
  return {
    criteria: draft.map((d) => ({
      id: d.id,
      name: d.name,
      direction: d.direction,
      priority: d.priority,
      threshold: d.threshold,
    })),
  };
}

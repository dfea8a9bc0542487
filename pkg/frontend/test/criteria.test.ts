/** Criteria editor drafts: normalization, slider rescaling, validation. */

import { describe, expect, it } from 'vitest';

import {
  adjustPriority,
  commitPayload,
  displayPercentages,
  draftError,
  draftFromCriteria,
} from '../src/criteria';
import type { CriterionPayload } from '../src/types';

const tableOne: CriterionPayload[] = [
  { id: 'clarity', name: '3D visual clarity', direction: 'benefit', weight: 0.1, threshold: null },
  { id: 'liver_risk', name: 'liver removal risk', direction: 'cost', weight: 0.1, threshold: null },
  { id: 'vessel', name: 'vessel exposure', direction: 'cost', weight: 0.2, threshold: null },
  { id: 'cancer', name: 'cancer spread', direction: 'cost', weight: 0.6, threshold: null },
];

describe('criteria drafts', () => {
  it('table defaults render as 10/10/20/60', () => {
    const draft = draftFromCriteria(tableOne);
    const percents = displayPercentages(draft);
    percents.forEach((p, i) => {
      expect(p).toBeCloseTo([10, 10, 20, 60][i], 9);
    });
  });

  it('dragging one slider rescales the others to a 100% total', () => {
    const draft = draftFromCriteria(tableOne);
    const adjusted = adjustPriority(draft, 3, 40); // cancer 60 -> 40
    const percents = displayPercentages(adjusted);
    expect(percents.reduce((a, b) => a + b, 0)).toBeCloseTo(100, 9);
    expect(percents[3]).toBeCloseTo(40, 9);
    // the other three keep their 1:1:2 proportion over the remaining 60
    expect(percents[0]).toBeCloseTo(15, 9);
    expect(percents[1]).toBeCloseTo(15, 9);
    expect(percents[2]).toBeCloseTo(30, 9);
  });

  it('raising a slider from an all-but-one-zero draft spreads the remainder', () => {
    const draft = draftFromCriteria(tableOne).map((d, i) => ({
      ...d,
      priority: i === 0 ? 100 : 0,
    }));
    const adjusted = adjustPriority(draft, 0, 70);
    const percents = displayPercentages(adjusted);
    expect(percents[0]).toBeCloseTo(70, 9);
    expect(percents[1]).toBeCloseTo(10, 9);
    expect(percents[2]).toBeCloseTo(10, 9);
    expect(percents[3]).toBeCloseTo(10, 9);
  });

  it('all-zero drafts are blocked client-side', () => {
    const draft = draftFromCriteria(tableOne).map((d) => ({ ...d, priority: 0 }));
    expect(draftError(draft)).toMatch(/positive/);
    expect(draftError(draftFromCriteria(tableOne))).toBeNull();
  });

  it('negative priorities are blocked', () => {
    const draft = draftFromCriteria(tableOne);
    draft[0].priority = -5;
    expect(draftError(draft)).toMatch(/nonnegative/);
  });

  it('commit payload feeds the service priority schema', () => {
    const body = commitPayload(draftFromCriteria(tableOne));
    expect(body.criteria).toHaveLength(4);
    expect(body.criteria[3]).toMatchObject({
      id: 'cancer',
      direction: 'cost',
      priority: 60,
    });
  });
});

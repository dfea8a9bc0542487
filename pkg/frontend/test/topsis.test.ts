/**
 * What-if / live parity: the console's TOPSIS must match the server's
 * scores within 1e-9 on the recorded hepatectomy fixture, so what-if
 * exploration with the server's own weights reproduces the live view.
 */

import { describe, expect, it } from 'vitest';

import { topsis, AllInfeasibleError } from '../src/topsis';
import fixture from '../fixtures/hepatectomy_feed.json';
import type { CriterionPayload, RankingPayload } from '../src/types';

const matrix = fixture.matrix as {
  criteria: CriterionPayload[];
  ids: number[];
  rows: number[][];
};
const serverRanking = fixture.final_ranking.ranking as RankingPayload;

describe('what-if parity with the server engine', () => {
  it('reproduces server scores within 1e-9 on the hepatectomy fixture', () => {
    const local = topsis(matrix);
    expect(local.ids).toEqual(serverRanking.ids);
    local.scores.forEach((score, i) => {
      expect(Math.abs(score - serverRanking.scores[i])).toBeLessThanOrEqual(1e-9);
    });
    expect(local.order).toEqual(serverRanking.order);
    expect(local.best_id).toBe(serverRanking.best_id);
    expect(local.degenerate).toBe(serverRanking.degenerate);
  });

  it('orders by the raw column when one criterion takes all the weight', () => {
    const criteria = matrix.criteria.map((c) => ({
      ...c,
      weight: c.id === 'ebl' ? 1 : 0,
    }));
    const ranking = topsis({ ...matrix, criteria });
    const eblIndex = matrix.criteria.findIndex((c) => c.id === 'ebl');
    const byEbl = [...matrix.ids].sort((a, b) => {
      const va = matrix.rows[matrix.ids.indexOf(a)][eblIndex];
      const vb = matrix.rows[matrix.ids.indexOf(b)][eblIndex];
      return va !== vb ? va - vb : a - b; // cost: ascending raw value
    });
    expect(ranking.order).toEqual(byEbl);
  });
});

describe('engine edge behavior mirrors the server contract', () => {
  it('ties break by ascending id', () => {
    const ranking = topsis({
      criteria: [
        { id: 'a', name: '', direction: 'benefit', weight: 1, threshold: null },
      ],
      ids: [3, 1, 2],
      rows: [[0.5], [0.9], [0.9]],
    });
    expect(ranking.order).toEqual([1, 2, 3]);
  });

  it('zero columns are diagnosed, single row is degenerate', () => {
    const ranking = topsis({
      criteria: [
        { id: 'dead', name: '', direction: 'cost', weight: 0.5, threshold: null },
        { id: 'live', name: '', direction: 'benefit', weight: 0.5, threshold: null },
      ],
      ids: [1],
      rows: [[0, 2]],
    });
    expect(ranking.zero_columns).toEqual(['dead']);
    expect(ranking.degenerate).toBe(true);
    expect(ranking.scores).toEqual([1]);
  });

  it('thresholds exclude rows and all-infeasible throws', () => {
    const criteria: CriterionPayload[] = [
      {
        id: 'ebl', name: '', direction: 'cost', weight: 1,
        threshold: { bound: 0.35, kind: 'max' },
      },
    ];
    const ranking = topsis({ criteria, ids: [1, 2], rows: [[0.03], [0.43]] });
    expect(ranking.ids).toEqual([1]);
    expect(ranking.excluded).toEqual([
      { id: 2, violations: [{ criterion: 'ebl', value: 0.43, bound: 0.35, kind: 'max' }] },
    ]);
    expect(() => topsis({ criteria, ids: [1], rows: [[0.9]] }))
      .toThrow(AllInfeasibleError);
  });
});

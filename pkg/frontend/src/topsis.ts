/**
 * Client-side TOPSIS over the current matrix snapshot, used for what-if
 * weight exploration so the live session is never perturbed.
 *
 * Mirrors the server pipeline exactly: threshold filtering, column L2
 * normalization (zero-norm columns map to zero), weighting, per-direction
 * ideal points, Euclidean separations, closeness C = S-/(S+ + S-) with the
 * degenerate case scoring 1, descending order with ties broken by
 * ascending alternative id. A parity test holds the two implementations
 * together within 1e-9.
 */

import type { CriterionPayload, RankingPayload, ViolationPayload } from './types';

export interface TopsisInput {
  criteria: CriterionPayload[];
  ids: number[];
  rows: number[][];
}

export class AllInfeasibleError extends Error {
  constructor(readonly excluded: RankingPayload['excluded']) {
    super('all alternatives violate some threshold');
  }
}

function violationsFor(row: number[], criteria: CriterionPayload[]): ViolationPayload[] {
  const out: ViolationPayload[] = [];
  criteria.forEach((crit, j) => {
    const t = crit.threshold;
    if (!t) return;
    const violated = t.kind === 'max' ? row[j] > t.bound : row[j] < t.bound;
    if (violated) {
      out.push({ criterion: crit.id, value: row[j], bound: t.bound, kind: t.kind });
    }
  });
  return out;
}

export function topsis(input: TopsisInput): RankingPayload {
  const { criteria } = input;
  const n = criteria.length;

  const excluded: RankingPayload['excluded'] = [];
  const keptIds: number[] = [];
  const kept: number[][] = [];
  input.ids.forEach((id, i) => {
    const violations = violationsFor(input.rows[i], criteria);
    if (violations.length > 0) {
      excluded.push({ id, violations });
    } else {
      keptIds.push(id);
      kept.push(input.rows[i]);
    }
  });
  excluded.sort((a, b) => a.id - b.id);
  if (keptIds.length === 0) {
    throw new AllInfeasibleError(excluded);
  }

  const norms: number[] = [];
  const zeroColumns: string[] = [];
  for (let j = 0; j < n; j++) {
    let sum = 0;
    for (const row of kept) sum += row[j] * row[j];
    const norm = Math.sqrt(sum);
    if (norm === 0) zeroColumns.push(criteria[j].id);
    norms.push(norm);
  }

  const weighted = kept.map((row) =>
    row.map((v, j) => (norms[j] === 0 ? 0 : (v / norms[j]) * criteria[j].weight)),
  );

  const positive: number[] = [];
  const negative: number[] = [];
  for (let j = 0; j < n; j++) {
    const column = weighted.map((row) => row[j]);
    const max = Math.max(...column);
    const min = Math.min(...column);
    if (criteria[j].direction === 'benefit') {
      positive.push(max);
      negative.push(min);
    } else {
      positive.push(min);
      negative.push(max);
    }
  }

  let degenerate = false;
  const scores = weighted.map((row) => {
    let sPos = 0;
    let sNeg = 0;
    row.forEach((v, j) => {
      sPos += (v - positive[j]) ** 2;
      sNeg += (v - negative[j]) ** 2;
    });
    const total = Math.sqrt(sPos) + Math.sqrt(sNeg);
    if (total === 0) {
      degenerate = true;
      return 1;
    }
    return Math.sqrt(sNeg) / total;
  });

  const byId = new Map(keptIds.map((id, i) => [id, scores[i]]));
  const order = [...keptIds].sort((a, b) => {
    const diff = byId.get(b)! - byId.get(a)!;
    return diff !== 0 ? diff : a - b;
  });

  return {
    ids: keptIds,
    scores,
    order,
    best_id: order[0],
    degenerate,
    zero_columns: zeroColumns,
    excluded,
  };
}

/** Wire payload shapes shared with the planning service. */

export type Direction = 'benefit' | 'cost';
export type BoundKind = 'max' | 'min';

export interface ThresholdPayload {
  bound: number;
  kind: BoundKind;
}

export interface CriterionPayload {
  id: string;
  name: string;
  direction: Direction;
  weight: number;
  threshold: ThresholdPayload | null;
}

export interface ViolationPayload {
  criterion: string;
  value: number;
  bound: number;
  kind: BoundKind;
}

export interface RankingPayload {
  ids: number[];
  scores: number[];
  order: number[];
  best_id: number;
  degenerate: boolean;
  zero_columns: string[];
  excluded: { id: number; violations: ViolationPayload[] }[];
}

export interface RecommendationPayload {
  session: string;
  revision: number;
  recommended_id: number;
  generated_at: number;
  ranking: RankingPayload;
}

export interface AlertPayload {
  session: string;
  chosen_id: number;
  recommended_id: number;
  score_gap: number;
  violations: ViolationPayload[];
}

export type EventKind =
  | 'SessionCreated'
  | 'CriteriaSet'
  | 'Frame'
  | 'Recommendation'
  | 'Feedback'
  | 'Alert'
  | 'WeightsUpdated';

export interface EventRecord {
  seq: number;
  kind: EventKind;
  ts: number;
  // payload shape depends on kind; consumers narrow it
  payload: Record<string, unknown>;
}

export interface FramePayload {
  session: string;
  ts: number;
  updates: { alt: number; crit: string; value: number }[];
}

export interface SelectionResponse {
  alert: AlertPayload | null;
  verdict: 'accepted' | 'overridden';
  weights_updated: boolean;
  revision: number;
}

export interface SessionDescriptor {
  id: string;
  scenario: string | null;
  created_at: number;
  revision: number;
  status: 'open' | 'closed';
}

/**
 * Console view state as a pure fold over the session event feed.
 *
 * The rendered table is a function of the events consumed: criteria and
 * matrix cells accumulate from CriteriaSet/Frame events, the live
 * ranking snapshots from Recommendation events, and the alert banner
 * from Alert events. A sequence gap flags the state for a full resync
 * from sequence 0; applying events never mutates the previous state.
 */

import type {
  AlertPayload,
  CriterionPayload,
  EventRecord,
  FramePayload,
  RecommendationPayload,
} from './types';

export interface ConsoleViewState {
  sessionId: string | null;
  lastSeq: number;
  revision: number;
  criteria: CriterionPayload[] | null;
  /** alt id -> criterion id -> raw value (insertion order preserved) */
  cells: Map<number, Map<string, number>>;
  recommendation: RecommendationPayload | null;
  alert: AlertPayload | null;
  allInfeasible: boolean;
  lastWeightsUpdate: number[] | null;
  needsResync: boolean;
}

export function initialState(): ConsoleViewState {
  return {
    sessionId: null,
    lastSeq: 0,
    revision: 0,
    criteria: null,
    cells: new Map(),
    recommendation: null,
    alert: null,
    allInfeasible: false,
    lastWeightsUpdate: null,
    needsResync: false,
  };
}

function cloneCells(cells: ConsoleViewState['cells']): ConsoleViewState['cells'] {
  const copy = new Map<number, Map<string, number>>();
  for (const [alt, row] of cells) copy.set(alt, new Map(row));
  return copy;
}

export function applyEvent(state: ConsoleViewState, event: EventRecord): ConsoleViewState {
  if (event.seq !== state.lastSeq + 1) {
    return { ...state, needsResync: true };
  }
  const next: ConsoleViewState = { ...state, lastSeq: event.seq };
  switch (event.kind) {
    case 'SessionCreated': {
      next.sessionId = event.payload.id as string;
      break;
    }
    case 'CriteriaSet': {
      next.criteria = event.payload.criteria as CriterionPayload[];
      next.revision = event.payload.revision as number;
      // reconcile stored cells: drop values for removed criteria
      const keep = new Set(next.criteria.map((c) => c.id));
      const cells = cloneCells(state.cells);
      for (const row of cells.values()) {
        for (const critId of [...row.keys()]) {
          if (!keep.has(critId)) row.delete(critId);
        }
      }
      next.cells = cells;
      break;
    }
    case 'Frame': {
      const frame = event.payload.frame as unknown as FramePayload;
      const cells = cloneCells(state.cells);
      for (const update of frame.updates) {
        const row = cells.get(update.alt) ?? new Map<string, number>();
        row.set(update.crit, update.value);
        cells.set(update.alt, row);
      }
      next.cells = cells;
      next.revision = event.payload.revision as number;
      break;
    }
    case 'Recommendation': {
      next.recommendation = event.payload as unknown as RecommendationPayload;
      next.allInfeasible = false;
      break;
    }
    case 'Alert': {
      if (event.payload.reason === 'all_infeasible') {
        next.allInfeasible = true;
      } else {
        next.alert = event.payload as unknown as AlertPayload;
      }
      break;
    }
    case 'WeightsUpdated': {
      next.lastWeightsUpdate = event.payload.weights as number[];
      next.revision = event.payload.revision as number;
      break;
    }
    case 'Feedback':
      break;
  }
  return next;
}

export function applyEvents(state: ConsoleViewState, events: EventRecord[]): ConsoleViewState {
  let current = state;
  for (const event of events) {
    current = applyEvent(current, event);
    if (current.needsResync) return current;
  }
  return current;
}

export function dismissAlert(state: ConsoleViewState): ConsoleViewState {
  return { ...state, alert: null };
}

/** Matrix snapshot for the what-if engine, rows ordered by ascending id. */
export function matrixSnapshot(
  state: ConsoleViewState,
): { ids: number[]; rows: number[][] } | null {
  if (!state.criteria || state.cells.size === 0) return null;
  const ids = [...state.cells.keys()].sort((a, b) => a - b);
  const rows = ids.map((alt) => {
    const row = state.cells.get(alt)!;
    return state.criteria!.map((crit) => row.get(crit.id) ?? 0);
  });
  return { ids, rows };
}

/**
 * Browser shell: wires the pure state/view modules to the DOM and the
 * service API. Rendering logic itself lives in view.ts / state.ts so it
 * stays testable without a browser.
 */

import { Client } from './api';
import {
  adjustPriority,
  commitPayload,
  displayPercentages,
  draftError,
  draftFromCriteria,
  type CriterionDraft,
} from './criteria';
import {
  applyEvents,
  dismissAlert,
  initialState,
  matrixSnapshot,
  type ConsoleViewState,
} from './state';
import { topsis, AllInfeasibleError } from './topsis';
import { renderAlertBanner, renderRankingTable, renderStatus } from './view';

const client = new Client('');

let state: ConsoleViewState = initialState();
let draft: CriterionDraft[] = [];
let draftDirty = false;
let whatIfWeights: number[] | null = null;
let sessionId: string | null = null;
let pollAbort = false;

function element<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function render(): void {
  element('status').innerHTML = renderStatus(state);
  element('banner').innerHTML = renderAlertBanner(state.alert);
  element('live-table').innerHTML = renderRankingTable(
    state.recommendation?.ranking ?? null,
  );
  renderWhatIf();
  renderCriteriaEditor();
  bindTableButtons();
}

function renderWhatIf(): void {
  const container = element('what-if-table');
  const snapshot = matrixSnapshot(state);
  if (!whatIfWeights || !snapshot || !state.criteria) {
    container.innerHTML = snapshot
      ? '<p class="placeholder">Drag the sliders to explore a what-if ranking.</p>'
      : '<p class="placeholder">What-if needs a matrix snapshot.</p>';
    return;
  }
  const criteria = state.criteria.map((c, j) => ({ ...c, weight: whatIfWeights![j] }));
  try {
    const ranking = topsis({ criteria, ids: snapshot.ids, rows: snapshot.rows });
    container.innerHTML = renderRankingTable(ranking, { whatIf: true });
  } catch (error) {
    if (error instanceof AllInfeasibleError) {
      container.innerHTML =
        '<p class="status error">what-if: every plan violates a constraint</p>';
    } else {
      throw error;
    }
  }
}

function renderCriteriaEditor(): void {
  const container = element('criteria-editor');
  if (!state.criteria) {
    container.innerHTML = '<p class="placeholder">No criteria yet.</p>';
    return;
  }
  if (!draftDirty) draft = draftFromCriteria(state.criteria);
  const percents = displayPercentages(draft);
  const rows = draft
    .map((d, i) => {
      const pct = percents[i];
      return (
        `<div class="criterion-row"><label>${d.id} (${d.direction})</label>` +
        `<input type="range" min="0" max="100" step="1" value="${pct.toFixed(0)}" data-index="${i}">` +
        `<span>${pct.toFixed(1)}%</span></div>`
      );
    })
    .join('');
  const error = draftError(draft);
  container.innerHTML =
    rows +
    `<button id="commit-criteria" ${error ? 'disabled' : ''}>commit priorities</button>` +
    (error ? `<p class="status error">${error}</p>` : '');
  container.querySelectorAll<HTMLInputElement>('input[type=range]').forEach((slider) => {
    slider.addEventListener('input', () => {
      const index = Number(slider.dataset.index);
      draft = adjustPriority(draft, index, Number(slider.value));
      draftDirty = true;
      whatIfWeights = displayPercentages(draft).map((p) => p / 100);
      render();
    });
  });
  const commit = container.querySelector<HTMLButtonElement>('#commit-criteria');
  commit?.addEventListener('click', async () => {
    if (!sessionId || draftError(draft)) return;
    await client.setCriteria(sessionId, commitPayload(draft));
    draftDirty = false;
    whatIfWeights = null;
  });
}

function bindTableButtons(): void {
  element('live-table')
    .querySelectorAll<HTMLButtonElement>('button.choose')
    .forEach((button) => {
      button.addEventListener('click', async () => {
        if (!sessionId) return;
        const chosen = Number(button.dataset.alt);
        const response = await client.postSelection(sessionId, chosen);
        if (response.alert) {
          state = { ...state, alert: response.alert };
          render();
        }
      });
    });
  const dismiss = document.getElementById('dismiss-alert');
  dismiss?.addEventListener('click', () => {
    state = dismissAlert(state);
    render();
  });
}

async function pollLoop(): Promise<void> {
  while (!pollAbort && sessionId) {
    try {
      const { events } = await client.pollEvents(sessionId, state.lastSeq, 20);
      if (events.length > 0) {
        state = applyEvents(state, events);
        if (state.needsResync) {
          // gap detected: rebuild from sequence 0
          const full = await client.pollEvents(sessionId, 0, 0);
          state = applyEvents(initialState(), full.events);
        }
        render();
      }
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 1000));
    }
  }
}

async function attach(): Promise<void> {
  const input = element<HTMLInputElement>('session-id');
  sessionId = input.value.trim();
  if (!sessionId) return;
  pollAbort = false;
  state = initialState();
  draftDirty = false;
  whatIfWeights = null;
  render();
  void pollLoop();
}

export function boot(): void {
  element('attach').addEventListener('click', () => void attach());
  render();
}

if (typeof document !== 'undefined' && document.getElementById('attach')) {
  boot();
}

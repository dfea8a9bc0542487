/**
 * Pure HTML renderers: view state in, markup out. The browser shell in
 * main.ts only swaps innerHTML, so snapshot tests pin the exact markup
 * an operator sees.
 *
 * Row color convention: the recommended row is green; a row is red when
 * it violates a constraint or sits in the bottom quartile by score.
 */

import type { ConsoleViewState } from './state';
import type { AlertPayload, RankingPayload } from './types';

export type RowTone = 'green' | 'red' | 'neutral';

export interface RankedRow {
  position: number;
  id: number;
  score: number | null;
  tone: RowTone;
  excluded: boolean;
  violations: string[];
}

/** Bottom-quartile boundary: the last ceil(m/4) ranked rows are red. */
export function bottomQuartileStart(rankedCount: number): number {
  return rankedCount - Math.max(1, Math.floor(rankedCount / 4));
}

export function rankedRows(ranking: RankingPayload): RankedRow[] {
  const scoreById = new Map(ranking.ids.map((id, i) => [id, ranking.scores[i]]));
  const quartileStart = bottomQuartileStart(ranking.order.length);
  const rows: RankedRow[] = ranking.order.map((id, position) => {
    let tone: RowTone = 'neutral';
    if (id === ranking.best_id) tone = 'green';
    else if (position >= quartileStart) tone = 'red';
    return {
      position: position + 1,
      id,
      score: scoreById.get(id) ?? null,
      tone,
      excluded: false,
      violations: [],
    };
  });
  for (const entry of ranking.excluded) {
    rows.push({
      position: rows.length + 1,
      id: entry.id,
      score: null,
      tone: 'red',
      excluded: true,
      violations: entry.violations.map(
        (v) => `${v.criterion} ${v.value} violates ${v.kind} ${v.bound}`,
      ),
    });
  }
  return rows;
}

function escapeHtml(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

export function renderRankingTable(
  ranking: RankingPayload | null,
  options: { whatIf?: boolean } = {},
): string {
  if (!ranking) {
    return '<p class="placeholder">No ranking yet - waiting for criteria and telemetry.</p>';
  }
  const rows = rankedRows(ranking);
  const label = options.whatIf ? ' <span class="what-if-tag">what-if</span>' : '';
  const body = rows
    .map((row) => {
      const score = row.score === null ? '-' : row.score.toFixed(6);
      const note = row.excluded
        ? `<td class="note">${escapeHtml(row.violations.join('; '))}</td>`
        : '<td class="note"></td>';
      const cls = [`tone-${row.tone}`, row.excluded ? 'excluded' : '']
        .filter(Boolean)
        .join(' ');
      return (
        `<tr class="${cls}" data-alt="${row.id}">` +
        `<td>${row.excluded ? '-' : row.position}</td>` +
        `<td>plan ${row.id}</td><td>${score}</td>${note}` +
        `<td><button class="choose" data-alt="${row.id}">choose</button></td></tr>`
      );
    })
    .join('');
  return (
    `<table class="ranking${options.whatIf ? ' what-if' : ''}">` +
    `<caption>ranking${label}</caption>` +
    '<thead><tr><th>#</th><th>plan</th><th>score</th><th>notes</th><th></th></tr></thead>' +
    `<tbody>${body}</tbody></table>`
  );
}

export function renderAlertBanner(alert: AlertPayload | null): string {
  if (!alert) return '';
  const violations = alert.violations.length
    ? ` Violations: ${escapeHtml(
        alert.violations
          .map((v) => `${v.criterion} ${v.value} violates ${v.kind} ${v.bound}`)
          .join('; '),
      )}.`
    : '';
  return (
    '<div class="alert-banner" role="alert">' +
    `Plan ${alert.chosen_id} is not the recommended step ` +
    `(plan ${alert.recommended_id} scores ${alert.score_gap.toFixed(4)} higher).` +
    `${violations} <button id="dismiss-alert">dismiss</button></div>`
  );
}

export function renderStatus(state: ConsoleViewState): string {
  if (state.allInfeasible) {
    return '<p class="status error">Every plan violates a constraint - recommendation withheld.</p>';
  }
  const revision = state.recommendation?.revision ?? state.revision;
  const recommended = state.recommendation
    ? `recommended plan ${state.recommendation.recommended_id}`
    : 'no recommendation yet';
  return `<p class="status">revision ${revision} - ${recommended}</p>`;
}

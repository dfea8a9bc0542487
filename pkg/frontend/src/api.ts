/** Thin fetch client for the planning service. */

import type {
  EventRecord,
  RecommendationPayload,
  SelectionResponse,
  SessionDescriptor,
} from './types';

export class ApiError extends Error {
  constructor(readonly code: string, message: string, readonly status: number) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(body.code ?? 'Unknown', body.message ?? response.statusText,
      response.status);
  }
  return body as T;
}

export class Client {
  constructor(readonly base: string = '') {}

  createSession(scenario?: string, id?: string): Promise<SessionDescriptor> {
    return request(`${this.base}/sessions`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ scenario, id }),
    });
  }

  getSession(id: string): Promise<SessionDescriptor> {
    return request(`${this.base}/sessions/${id}`);
  }

  setCriteria(id: string, payload: unknown): Promise<{ revision: number }> {
    return request(`${this.base}/sessions/${id}/criteria`, {
      method: 'PUT',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    });
  }

  getRanking(id: string, revision?: number): Promise<RecommendationPayload> {
    const query = revision === undefined ? '' : `?revision=${revision}`;
    return request(`${this.base}/sessions/${id}/ranking${query}`);
  }

  postSelection(id: string, chosenId: number): Promise<SelectionResponse> {
    return request(`${this.base}/sessions/${id}/selection`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ chosen_id: chosenId }),
    });
  }

  /** Long-poll the event feed from a cursor; resolves with new events. */
  pollEvents(id: string, fromSeq: number, waitSeconds = 25): Promise<{ events: EventRecord[] }> {
    return request(
      `${this.base}/sessions/${id}/events?from=${fromSeq}&wait=${waitSeconds}`,
    );
  }
}

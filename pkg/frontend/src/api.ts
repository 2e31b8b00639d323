/** Thin typed client for the BDN service routes. */

import type { AdoptionStatus, ModelDoc, PlanDoc, PlanMode, ReportDoc } from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function errorMessage(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (body && typeof body.error === 'string') return body.error;
  } catch {
    /* not JSON */
  }
  return `${response.status} ${response.statusText}`;
}

export class ApiClient {
  constructor(
    private base = '',
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request(url: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchImpl(this.base + url, init);
    if (!response.ok) {
      throw new ApiError(response.status, await errorMessage(response));
    }
    return response;
  }

  /** Model document plus the revision carried in the ETag header. */
  async getModel(): Promise<{ model: ModelDoc; revision: string }> {
    const response = await this.request('/api/model');
    const revision = (response.headers.get('etag') ?? '').replaceAll('"', '');
    return { model: (await response.json()) as ModelDoc, revision };
  }

  async getAssessment(): Promise<ReportDoc> {
    const response = await this.request('/api/assessment');
    return (await response.json()) as ReportDoc;
  }

  /** Hypothetical assessment; the server state stays untouched. */
  async whatIf(overlay: Record<string, AdoptionStatus>): Promise<ReportDoc> {
    const response = await this.request('/api/whatif', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ overlay }),
    });
    return (await response.json()) as ReportDoc;
  }

  async putAdoption(practiceId: string, status: AdoptionStatus): Promise<number> {
    const response = await this.request(`/api/adoption/${encodeURIComponent(practiceId)}`, {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ status }),
    });
    const body = (await response.json()) as { revision: number };
    return body.revision;
  }

  async getPlan(target: string, mode: PlanMode = 'partial'): Promise<PlanDoc> {
    const query = new URLSearchParams({ target, mode });
    const response = await this.request(`/api/plan?${query}`);
    return (await response.json()) as PlanDoc;
  }
}

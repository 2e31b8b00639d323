/** Canned-response fetch for unit tests: no semantics, just a request log
 * and a router of static bodies. */

import type { FetchLike } from '../src/api.js';
import type { ModelDoc, ReportDoc } from '../src/types.js';

export interface Recorded {
  method: string;
  url: string;
  body?: unknown;
}

export interface FakeRoute {
  status?: number;
  body: unknown;
  headers?: Record<string, string>;
}

export function fakeFetch(
  router: (method: string, url: string, body: unknown) => FakeRoute,
  log: Recorded[] = [],
): { fetch: FetchLike; log: Recorded[] } {
  const impl: FetchLike = async (url, init) => {
    const method = init?.method ?? 'GET';
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    log.push({ method, url, body });
    const route = router(method, url, body);
    return new Response(JSON.stringify(route.body), {
      status: route.status ?? 200,
      headers: { 'content-type': 'application/json', ...(route.headers ?? {}) },
    });
  };
  return { fetch: impl, log };
}

export const tinyModel: ModelDoc = {
  context: 'deployment',
  origin: 'literature',
  practices: [
    { id: 'ad', name: 'Automated deployment', description: '', principles: [], depends: [], provenance: [] },
    { id: 'ci', name: 'Continuous integration', description: '', principles: [], depends: [], provenance: [] },
    { id: 'cd', name: 'Continuous deployment', description: '', principles: [], depends: [['ad', 'ci']], provenance: [] },
  ],
  benefits: [
    { id: 'b1', name: 'Fast releases', svm: ['Customer/Perceived value'], provenance: [] },
    { id: 'b2', name: 'Cost saving', svm: ['Customer/Perceived value'], provenance: [] },
  ],
  realizes: [
    { practice: 'ci', benefit: 'b1', provenance: [], evidence: [] },
    { practice: 'cd', benefit: 'b2', provenance: [], evidence: [] },
  ],
};

export function tinyReport(overrides: Partial<ReportDoc> = {}): ReportDoc {
  return {
    enabled: [],
    inconsistent: [],
    frontier: ['ad', 'ci'],
    in_progress: [],
    benefits: [
      { benefit: 'b1', status: 'unrealized', active_realizers: [], inactive_realizers: ['ci'] },
      { benefit: 'b2', status: 'unrealized', active_realizers: [], inactive_realizers: ['cd'] },
    ],
    value_attainment: { Customer: 0.0, 'Customer/Perceived value': 0.0 },
    layer_coverage: [
      { layer: 0, practices: ['ad', 'ci'], enabled_fraction: 0 },
      { layer: 1, practices: ['cd'], enabled_fraction: 0 },
    ],
    recommendations: [],
    generated_at: '',
    ...overrides,
  };
}

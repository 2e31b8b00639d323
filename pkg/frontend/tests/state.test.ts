import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { Session, statusFromReport } from '../src/state.js';
import { fakeFetch, tinyModel, tinyReport, type FakeRoute } from './helpers.js';

function routerWith(overrides: (method: string, url: string, body: unknown) => FakeRoute | null) {
  return (method: string, url: string, body: unknown): FakeRoute => {
    const custom = overrides(method, url, body);
    if (custom) return custom;
    if (method === 'GET' && url === '/api/model') {
      return { body: tinyModel, headers: { etag: '"1"' } };
    }
    if (method === 'GET' && url === '/api/assessment') {
      return { body: tinyReport() };
    }
    throw new Error(`unexpected request ${method} ${url}`);
  };
}

async function loadedSession(overrides: (m: string, u: string, b: unknown) => FakeRoute | null) {
  const { fetch, log } = fakeFetch(routerWith(overrides));
  const session = new Session(new ApiClient('', fetch));
  await session.load();
  return { session, log };
}

describe('session', () => {
  it('loads model and assessment', async () => {
    const { session } = await loadedSession(() => null);
    expect(session.state.model?.practices).toHaveLength(3);
    expect(session.state.revision).toBe('1');
    expect(session.state.report?.frontier).toEqual(['ad', 'ci']);
    expect(session.state.error).toBeNull();
  });

  it('shows an error state when the service is down', async () => {
    const failing = new ApiClient('', async () => {
      throw new Error('connection refused');
    });
    const session = new Session(failing);
    await session.load();
    expect(session.state.error).toContain('connection refused');
    expect(session.state.model).toBeNull();
  });

  it('what-if toggles never issue mutating requests', async () => {
    const enabledReport = tinyReport({ enabled: ['ci'], frontier: ['ad'] });
    const { session, log } = await loadedSession((method, url) => {
      if (method === 'POST' && url === '/api/whatif') return { body: enabledReport };
      return null;
    });
    await session.setMode('whatif');
    await session.togglePractice('ci');
    expect(session.state.overlay).toEqual({ ci: 'adopted' });
    expect(session.state.report?.enabled).toEqual(['ci']);
    expect(log.some((r) => r.method === 'PUT')).toBe(false);
    // committed view is retained for discard
    expect(session.state.committedReport?.enabled).toEqual([]);
  });

  it('discard clears the overlay and restores the committed report', async () => {
    const { session } = await loadedSession((method, url) => {
      if (method === 'POST' && url === '/api/whatif') {
        return { body: tinyReport({ enabled: ['ci'] }) };
      }
      return null;
    });
    await session.setMode('whatif');
    await session.togglePractice('ci');
    await session.discardOverlay();
    expect(session.state.overlay).toEqual({});
    expect(session.state.report?.enabled).toEqual([]);
  });

  it('commit mode PUTs then refetches the assessment', async () => {
    let adopted = false;
    const { session, log } = await loadedSession((method, url) => {
      if (method === 'PUT' && url === '/api/adoption/ci') {
        adopted = true;
        return { body: { revision: 2 } };
      }
      if (method === 'GET' && url === '/api/assessment' && adopted) {
        return { body: tinyReport({ enabled: ['ci'], frontier: ['ad'] }) };
      }
      if (method === 'GET' && url === '/api/model' && adopted) {
        return { body: tinyModel, headers: { etag: '"2"' } };
      }
      return null;
    });
    await session.togglePractice('ci');
    expect(log.filter((r) => r.method === 'PUT')).toHaveLength(1);
    expect(log.at(-3)?.body).toEqual({ status: 'adopted' });
    expect(session.state.report?.enabled).toEqual(['ci']);
    expect(session.state.revision).toBe('2');
    // toggling back sends not_adopted
    await session.togglePractice('ci');
    expect(log.filter((r) => r.method === 'PUT').at(-1)?.body).toEqual({ status: 'not_adopted' });
  });

  it('404 on toggle flags a stale revision', async () => {
    const { session } = await loadedSession((method, url) => {
      if (method === 'PUT' && url === '/api/adoption/gone') {
        return { status: 404, body: { error: 'unknown practice' } };
      }
      return null;
    });
    await session.togglePractice('gone');
    expect(session.state.staleRevision).toBe(true);
  });

  it('plan panel states: steps, unreachable, unknown', async () => {
    const { session } = await loadedSession((method, url) => {
      if (method === 'GET' && url.startsWith('/api/plan')) {
        if (url.includes('target=b2')) {
          return {
            body: { target: 'b2', mode: 'partial', steps: [{ order: 1, practice: 'ad', unlocks: [] }] },
          };
        }
        if (url.includes('target=stranded')) {
          return { status: 409, body: { error: 'no realizer' } };
        }
        return { status: 404, body: { error: 'unknown target' } };
      }
      return null;
    });
    await session.showPlan('b2');
    expect(session.state.plan?.steps.map((s) => s.practice)).toEqual(['ad']);
    await session.showPlan('stranded');
    expect(session.state.plan).toBeNull();
    expect(session.state.planError).toContain('unreachable');
    await session.showPlan('nope');
    expect(session.state.planError).toContain('unknown');
  });

  it('derives committed practice status from report fields only', () => {
    const report = tinyReport({ enabled: ['ci'], inconsistent: ['cd'], in_progress: ['ad'] });
    expect(statusFromReport(report, 'ci')).toBe('adopted');
    expect(statusFromReport(report, 'cd')).toBe('adopted');
    expect(statusFromReport(report, 'ad')).toBe('in_progress');
    expect(statusFromReport(report, 'other')).toBe('not_adopted');
  });

  it('leaving what-if mode clears the overlay', async () => {
    const { session } = await loadedSession((method, url) => {
      if (method === 'POST' && url === '/api/whatif') {
        return { body: tinyReport({ enabled: ['ci'] }) };
      }
      return null;
    });
    await session.setMode('whatif');
    await session.togglePractice('ci');
    await session.setMode('commit');
    expect(session.state.overlay).toEqual({});
    expect(session.state.report?.enabled).toEqual([]);
  });
});

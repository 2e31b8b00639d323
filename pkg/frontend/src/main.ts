/** Bootstrap: wire the session controller to the page. */

import { ApiClient } from './api.js';
import { computeLayout, type GraphLayout } from './layout.js';
import { renderGraph, renderPlanPanel, renderScores } from './render.js';
import { Session, type ViewState } from './state.js';

const api = new ApiClient('');
let layoutCache: GraphLayout | null = null;
let names = new Map<string, string>();
let highlighted = new Set<string>();

const el = (id: string) => document.getElementById(id)!;

function banner(state: ViewState): string {
  if (state.staleRevision) {
    return '<div class="banner stale">The model changed on the server. <button id="reload">Reload</button></div>';
  }
  if (state.error) {
    return `<div class="banner error">${state.error} <button id="reload">Retry</button></div>`;
  }
  if (state.mode === 'whatif') {
    const count = Object.keys(state.overlay).length;
    return (
      `<div class="banner whatif">What-if mode: exploring ${count} uncommitted change(s). ` +
      'Nothing is written until you commit. <button id="commit-overlay">Commit</button> ' +
      '<button id="discard-overlay">Discard</button></div>'
    );
  }
  return '<div class="banner commit">Commit mode: toggles write to the tracked adoption state.</div>';
}

function redraw(state: ViewState): void {
  el('banner').innerHTML = banner(state);
  if (state.model && state.report) {
    if (!layoutCache) {
      layoutCache = computeLayout(state.model, state.report.layer_coverage);
      names = new Map([
        ...state.model.practices.map((p) => [p.id, p.name] as const),
        ...state.model.benefits.map((b) => [b.id, b.name] as const),
      ]);
    }
    el('graph').innerHTML = renderGraph(layoutCache, names, state.report, state.selected, highlighted);
  } else if (!state.error) {
    el('graph').innerHTML = '<p class="loading">Loading model…</p>';
  } else {
    el('graph').innerHTML = '';
  }
  el('plan').innerHTML = renderPlanPanel(state.plan, state.planError);
  el('scores').innerHTML = renderScores(state.report);
  el('revision').textContent = state.revision ? `revision ${state.revision}` : '';
  (el('mode-commit') as HTMLInputElement).checked = state.mode === 'commit';
  (el('mode-whatif') as HTMLInputElement).checked = state.mode === 'whatif';
}

const session = new Session(api, redraw);

function wireEvents(): void {
  el('graph').addEventListener('click', (event) => {
    const target = (event.target as Element).closest('.node') as HTMLElement | null;
    if (!target) return;
    const id = target.dataset.id!;
    if (target.dataset.kind === 'practice') {
      void session.togglePractice(id);
    } else {
      void session.showPlan(id);
    }
  });
  el('plan').addEventListener('mouseover', (event) => {
    const step = (event.target as Element).closest('.plan-step') as HTMLElement | null;
    highlighted = new Set<string>();
    if (step) {
      highlighted.add(step.dataset.practice!);
      for (const bid of (step.dataset.unlocks ?? '').split(',').filter(Boolean)) {
        highlighted.add(bid);
      }
    }
    redraw(session.state);
  });
  el('plan').addEventListener('mouseout', () => {
    highlighted = new Set();
    redraw(session.state);
  });
  document.body.addEventListener('click', (event) => {
    const button = event.target as HTMLElement;
    if (button.id === 'reload') {
      layoutCache = null;
      void session.load();
    } else if (button.id === 'commit-overlay') {
      void session.commitOverlay();
    } else if (button.id === 'discard-overlay') {
      void session.discardOverlay();
    }
  });
  el('mode-commit').addEventListener('change', () => void session.setMode('commit'));
  el('mode-whatif').addEventListener('change', () => void session.setMode('whatif'));
}

wireEvents();
void session.load();

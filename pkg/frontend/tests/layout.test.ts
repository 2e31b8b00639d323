import { describe, expect, it } from 'vitest';

import { computeLayout, dependencyEdges, perspectiveOf } from '../src/layout.js';
import { tinyModel, tinyReport } from './helpers.js';

describe('layout', () => {
  it('puts practices into columns by layer index', () => {
    const layout = computeLayout(tinyModel, tinyReport().layer_coverage);
    const byId = new Map(layout.nodes.map((n) => [n.id, n]));
    expect(byId.get('ad')!.x).toBe(byId.get('ci')!.x);
    expect(byId.get('cd')!.x).toBeGreaterThan(byId.get('ci')!.x);
  });

  it('places benefits in a final column grouped by perspective', () => {
    const layout = computeLayout(tinyModel, tinyReport().layer_coverage);
    const byId = new Map(layout.nodes.map((n) => [n.id, n]));
    const practiceRight = Math.max(byId.get('cd')!.x, byId.get('ci')!.x);
    expect(byId.get('b1')!.x).toBeGreaterThan(practiceRight);
    expect(byId.get('b1')!.group).toBe('Customer');
    expect(layout.groups.map((g) => g.label)).toEqual(['Customer']);
  });

  it('renders every node exactly once', () => {
    const layout = computeLayout(tinyModel, tinyReport().layer_coverage);
    const ids = layout.nodes.map((n) => n.id).sort();
    expect(ids).toEqual(['ad', 'b1', 'b2', 'cd', 'ci']);
  });

  it('derives deduplicated prerequisite-to-dependent edges', () => {
    const edges = dependencyEdges(tinyModel);
    expect(edges).toEqual([
      { from: 'ad', to: 'cd', kind: 'dependency' },
      { from: 'ci', to: 'cd', kind: 'dependency' },
    ]);
  });

  it('reads group members from both wire forms', () => {
    const model = structuredClone(tinyModel);
    model.practices[2].depends = [{ members: ['ad'], provenance: [] }, ['ci']];
    const froms = dependencyEdges(model).map((e) => e.from);
    expect(froms).toEqual(['ad', 'ci']);
  });

  it('labels unmapped benefits distinctly', () => {
    expect(perspectiveOf([])).toBe('(unmapped)');
    expect(perspectiveOf(['Unmapped/communication & collaboration'])).toBe('Unmapped');
  });
});

import { describe, expect, it } from 'vitest';

import { computeLayout } from '../src/layout.js';
import { COLORS, renderGraph, renderPlanPanel, renderScores } from '../src/render.js';
import { tinyModel, tinyReport } from './helpers.js';

const names = new Map([
  ...tinyModel.practices.map((p) => [p.id, p.name] as const),
  ...tinyModel.benefits.map((b) => [b.id, b.name] as const),
]);

function svgFor(report = tinyReport()) {
  return renderGraph(computeLayout(tinyModel, report.layer_coverage), names, report);
}

describe('graph rendering', () => {
  it('draws three practice boxes and two benefit ellipses', () => {
    const svg = svgFor();
    expect(svg.match(/<rect[^>]*rx="6"/g)).toHaveLength(3);
    expect(svg.match(/<ellipse/g)).toHaveLength(2);
  });

  it('colors by report fields only', () => {
    const report = tinyReport({
      enabled: ['ci'],
      inconsistent: ['cd'],
      frontier: ['ad'],
      benefits: [
        { benefit: 'b1', status: 'fully_realized', active_realizers: ['ci'], inactive_realizers: [] },
        { benefit: 'b2', status: 'partially_realized', active_realizers: [], inactive_realizers: ['cd'] },
      ],
    });
    const svg = svgFor(report);
    const node = (id: string) => svg.slice(svg.indexOf(`data-id="${id}"`)).split('</g>')[0];
    expect(node('ci')).toContain(`fill="${COLORS.enabled}"`);
    expect(node('cd')).toContain(`fill="${COLORS.inconsistent}"`);
    expect(node('ad')).toContain(`stroke="${COLORS.frontierOutline}"`);
    expect(node('b1')).toContain(`fill="${COLORS.fully}"`);
    expect(node('b2')).toContain(`fill="${COLORS.partially}"`);
  });

  it('dashes realization edges and not dependency edges', () => {
    const svg = svgFor();
    const realization = svg.match(/<path class="edge realization"[^>]*>/g) ?? [];
    const dependency = svg.match(/<path class="edge dependency"[^>]*>/g) ?? [];
    expect(realization).toHaveLength(2);
    expect(dependency).toHaveLength(2);
    expect(realization.every((p) => p.includes('stroke-dasharray'))).toBe(true);
    expect(dependency.some((p) => p.includes('stroke-dasharray'))).toBe(false);
  });

  it('escapes names in labels', () => {
    const withAmp = structuredClone(tinyModel);
    withAmp.benefits[0].name = 'Fast & <frequent> releases';
    const escapedNames = new Map(names);
    escapedNames.set('b1', withAmp.benefits[0].name);
    const svg = renderGraph(
      computeLayout(withAmp, tinyReport().layer_coverage),
      escapedNames,
      tinyReport(),
    );
    expect(svg).toContain('Fast &amp; &lt;frequent&gt; releases');
  });

  it('is deterministic', () => {
    expect(svgFor()).toBe(svgFor());
  });
});

describe('plan panel', () => {
  it('renders ordered steps with unlock annotations', () => {
    const html = renderPlanPanel(
      {
        target: 'b2',
        mode: 'partial',
        steps: [
          { order: 1, practice: 'ad', unlocks: [] },
          { order: 2, practice: 'cd', unlocks: ['b2'] },
        ],
      },
      null,
    );
    expect(html).toContain('data-practice="ad"');
    expect(html.indexOf('data-practice="ad"')).toBeLessThan(html.indexOf('data-practice="cd"'));
    expect(html).toContain('unlocks b2');
  });

  it('renders the already-realized message for empty plans', () => {
    const html = renderPlanPanel({ target: 'b1', mode: 'partial', steps: [] }, null);
    expect(html).toContain('Already realized');
  });

  it('renders unreachable errors', () => {
    expect(renderPlanPanel(null, 'unreachable: no practice realizes this benefit')).toContain(
      'unreachable',
    );
  });
});

describe('score table', () => {
  it('shows perspective-level attainment', () => {
    const html = renderScores(tinyReport({ value_attainment: { Customer: 0.5, 'Customer/Perceived value': 0.5 } }));
    expect(html).toContain('<td>Customer</td>');
    expect(html).toContain('0.50');
    expect(html).not.toContain('Perceived value');
  });
});

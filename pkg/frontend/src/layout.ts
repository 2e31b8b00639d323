/** Deterministic left-to-right layout: practices in dependency-layer
 * columns (straight from the report's layer coverage), benefits in a final
 * column grouped by value perspective. Pure geometry, no semantics. */

import type { LayerCoverageDoc, ModelDoc } from './types.js';

export interface NodeBox {
  id: string;
  kind: 'practice' | 'benefit';
  x: number;
  y: number;
  width: number;
  height: number;
  /** perspective group label, benefits only */
  group?: string;
}

export interface EdgeLine {
  from: string;
  to: string;
  kind: 'dependency' | 'realization';
}

export interface GraphLayout {
  nodes: NodeBox[];
  edges: EdgeLine[];
  width: number;
  height: number;
  groups: Array<{ label: string; y: number; height: number }>;
}

export const NODE_WIDTH = 190;
export const NODE_HEIGHT = 44;
const COLUMN_GAP = 90;
const ROW_GAP = 26;
const GROUP_GAP = 40;
const MARGIN = 24;
const GROUP_HEADER = 24;

export function perspectiveOf(svmPaths: string[]): string {
  if (svmPaths.length === 0) return '(unmapped)';
  return [...svmPaths].sort()[0].split('/')[0];
}

/** Conservative dependency edges (prerequisite -> dependent), deduplicated. */
export function dependencyEdges(model: ModelDoc): EdgeLine[] {
  const seen = new Set<string>();
  const edges: EdgeLine[] = [];
  for (const practice of model.practices) {
    for (const group of practice.depends) {
      const members = Array.isArray(group) ? group : group.members;
      for (const member of members) {
        const key = `${member}->${practice.id}`;
        if (!seen.has(key)) {
          seen.add(key);
          edges.push({ from: member, to: practice.id, kind: 'dependency' });
        }
      }
    }
  }
  edges.sort((a, b) => (a.from + a.to).localeCompare(b.from + b.to));
  return edges;
}

export function computeLayout(model: ModelDoc, layers: LayerCoverageDoc[]): GraphLayout {
  const nodes: NodeBox[] = [];
  const columnX = (index: number) => MARGIN + index * (NODE_WIDTH + COLUMN_GAP);

  let maxColumnBottom = MARGIN;
  layers.forEach((layer, column) => {
    layer.practices.forEach((pid, row) => {
      nodes.push({
        id: pid,
        kind: 'practice',
        x: columnX(column),
        y: MARGIN + row * (NODE_HEIGHT + ROW_GAP),
        width: NODE_WIDTH,
        height: NODE_HEIGHT,
      });
    });
    maxColumnBottom = Math.max(
      maxColumnBottom,
      MARGIN + layer.practices.length * (NODE_HEIGHT + ROW_GAP),
    );
  });

  // benefits: one column to the right, grouped by perspective
  const benefitColumn = columnX(Math.max(layers.length, 1));
  const byGroup = new Map<string, string[]>();
  for (const benefit of [...model.benefits].sort((a, b) => a.id.localeCompare(b.id))) {
    const label = perspectiveOf(benefit.svm);
    if (!byGroup.has(label)) byGroup.set(label, []);
    byGroup.get(label)!.push(benefit.id);
  }
  const groups: GraphLayout['groups'] = [];
  let y = MARGIN;
  for (const label of [...byGroup.keys()].sort()) {
    const ids = byGroup.get(label)!;
    const top = y;
    y += GROUP_HEADER;
    for (const bid of ids) {
      nodes.push({
        id: bid,
        kind: 'benefit',
        x: benefitColumn,
        y,
        width: NODE_WIDTH,
        height: NODE_HEIGHT,
        group: label,
      });
      y += NODE_HEIGHT + ROW_GAP;
    }
    groups.push({ label, y: top, height: y - top - ROW_GAP + 8 });
    y += GROUP_GAP;
  }

  const edges: EdgeLine[] = [
    ...dependencyEdges(model),
    ...model.realizes
      .map((e) => ({ from: e.practice, to: e.benefit, kind: 'realization' as const }))
      .sort((a, b) => (a.from + a.to).localeCompare(b.from + b.to)),
  ];

  return {
    nodes,
    edges,
    width: benefitColumn + NODE_WIDTH + MARGIN,
    height: Math.max(maxColumnBottom, y - GROUP_GAP + MARGIN),
    groups,
  };
}

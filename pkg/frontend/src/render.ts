/** SVG rendering as pure string templating: testable without a DOM.
 * Colors mirror the DOT export scheme: enabled green fill, adopted-but-
 * blocked orange, frontier blue outline, everything else gray; benefits go
 * gray / orange / green by realization status. */

import type { GraphLayout, NodeBox } from './layout.js';
import type { PlanDoc, ReportDoc } from './types.js';

export const COLORS = {
  enabled: '#7ee081',
  inconsistent: '#ffb347',
  frontierOutline: '#2563eb',
  idle: '#d4d4d4',
  fully: '#7ee081',
  partially: '#ffb347',
  unrealized: '#d4d4d4',
  edge: '#6b7280',
};

function escapeXml(text: string): string {
  return text
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;');
}

export function practiceFill(report: ReportDoc, practiceId: string): string {
  if (report.enabled.includes(practiceId)) return COLORS.enabled;
  if (report.inconsistent.includes(practiceId)) return COLORS.inconsistent;
  return COLORS.idle;
}

export function benefitFill(report: ReportDoc, benefitId: string): string {
  const status = report.benefits.find((b) => b.benefit === benefitId)?.status;
  if (status === 'fully_realized') return COLORS.fully;
  if (status === 'partially_realized') return COLORS.partially;
  return COLORS.unrealized;
}

function nodeSvg(
  node: NodeBox,
  label: string,
  report: ReportDoc | null,
  selected: string | null,
  highlighted: Set<string>,
): string {
  const fill = !report
    ? COLORS.idle
    : node.kind === 'practice'
      ? practiceFill(report, node.id)
      : benefitFill(report, node.id);
  const frontier = node.kind === 'practice' && report?.frontier.includes(node.id);
  const stroke = frontier ? COLORS.frontierOutline : '#374151';
  const strokeWidth = frontier || highlighted.has(node.id) ? 3 : 1;
  const dash = highlighted.has(node.id) ? ' stroke-dasharray="6 3"' : '';
  const selectedMark =
    selected === node.id
      ? `<rect x="${node.x - 4}" y="${node.y - 4}" width="${node.width + 8}" height="${node.height + 8}" rx="10" fill="none" stroke="#111827" stroke-width="1.5"/>`
      : '';
  const shape =
    node.kind === 'practice'
      ? `<rect x="${node.x}" y="${node.y}" width="${node.width}" height="${node.height}" rx="6" fill="${fill}" stroke="${stroke}" stroke-width="${strokeWidth}"${dash}/>`
      : `<ellipse cx="${node.x + node.width / 2}" cy="${node.y + node.height / 2}" rx="${node.width / 2}" ry="${node.height / 2}" fill="${fill}" stroke="${stroke}" stroke-width="${strokeWidth}"${dash}/>`;
  return (
    `<g class="node ${node.kind}" data-id="${escapeXml(node.id)}" data-kind="${node.kind}">` +
    selectedMark +
    shape +
    `<text x="${node.x + node.width / 2}" y="${node.y + node.height / 2 + 4}" text-anchor="middle">${escapeXml(label)}</text>` +
    `</g>`
  );
}

export function renderGraph(
  layout: GraphLayout,
  names: Map<string, string>,
  report: ReportDoc | null,
  selected: string | null = null,
  highlighted: Set<string> = new Set(),
): string {
  const boxes = new Map(layout.nodes.map((n) => [n.id, n]));
  const anchor = (id: string, side: 'out' | 'in'): [number, number] => {
    const box = boxes.get(id)!;
    return [side === 'out' ? box.x + box.width : box.x, box.y + box.height / 2];
  };
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${layout.width} ${layout.height}" width="${layout.width}" height="${layout.height}">`,
  );
  parts.push(
    `<defs><marker id="arrow" viewBox="0 0 8 8" refX="8" refY="4" markerWidth="7" markerHeight="7" orient="auto"><path d="M0 0 L8 4 L0 8 z" fill="${COLORS.edge}"/></marker></defs>`,
  );
  for (const group of layout.groups) {
    parts.push(
      `<text class="group-label" x="${layout.width - 214}" y="${group.y + 14}" font-weight="bold">${escapeXml(group.label)}</text>`,
    );
  }
  for (const edge of layout.edges) {
    if (!boxes.has(edge.from) || !boxes.has(edge.to)) continue;
    const [x1, y1] = anchor(edge.from, 'out');
    const [x2, y2] = anchor(edge.to, 'in');
    const dash = edge.kind === 'realization' ? ' stroke-dasharray="5 4"' : '';
    const midX = (x1 + x2) / 2;
    parts.push(
      `<path class="edge ${edge.kind}" d="M${x1} ${y1} C ${midX} ${y1}, ${midX} ${y2}, ${x2} ${y2}" fill="none" stroke="${COLORS.edge}"${dash} marker-end="url(#arrow)"/>`,
    );
  }
  for (const node of layout.nodes) {
    parts.push(nodeSvg(node, names.get(node.id) ?? node.id, report, selected, highlighted));
  }
  parts.push('</svg>');
  return parts.join('');
}

export function renderPlanPanel(plan: PlanDoc | null, planError: string | null): string {
  if (planError) return `<p class="plan-error">${escapeXml(planError)}</p>`;
  if (!plan) return '<p class="plan-hint">Select a benefit to see an improvement path.</p>';
  if (plan.steps.length === 0) {
    return `<p class="plan-done">Already realized: <strong>${escapeXml(plan.target)}</strong> needs no new practices.</p>`;
  }
  const items = plan.steps
    .map(
      (step) =>
        `<li class="plan-step" data-practice="${escapeXml(step.practice)}" data-unlocks="${escapeXml(step.unlocks.join(','))}">` +
        `<span class="order">${step.order}</span> ${escapeXml(step.practice)}` +
        (step.unlocks.length ? `<span class="unlocks">unlocks ${escapeXml(step.unlocks.join(', '))}</span>` : '') +
        `</li>`,
    )
    .join('');
  return `<p>Path to <strong>${escapeXml(plan.target)}</strong> (${plan.mode}):</p><ol class="plan">${items}</ol>`;
}

export function renderScores(report: ReportDoc | null): string {
  if (!report) return '';
  const rows = Object.entries(report.value_attainment)
    .filter(([path]) => !path.includes('/')) // perspective level only
    .map(
      ([path, score]) =>
        `<tr><td>${escapeXml(path)}</td><td class="score">${score.toFixed(2)}</td></tr>`,
    )
    .join('');
  return `<table class="scores"><thead><tr><th>Perspective</th><th>Score</th></tr></thead><tbody>${rows}</tbody></table>`;
}

/** Wire types mirroring the service's JSON documents. */

export type AdoptionStatus = 'not_adopted' | 'in_progress' | 'adopted';
export type BenefitRealization = 'unrealized' | 'partially_realized' | 'fully_realized';
export type PlanMode = 'partial' | 'full';

export interface ProvenanceEntry {
  kind: 'literature' | 'case';
  label: string;
  note?: string;
}

export interface PracticeDoc {
  id: string;
  name: string;
  description: string;
  principles: string[];
  depends: Array<string[] | { members: string[]; provenance: ProvenanceEntry[] }>;
  provenance: ProvenanceEntry[];
}

export interface BenefitDoc {
  id: string;
  name: string;
  svm: string[];
  provenance: ProvenanceEntry[];
}

export interface RealizationDoc {
  practice: string;
  benefit: string;
  provenance: ProvenanceEntry[];
  evidence: Array<{ case: string; observed: boolean; date: string; note: string }>;
}

export interface ModelDoc {
  context: string;
  origin: 'literature' | 'in_practice' | 'joint';
  practices: PracticeDoc[];
  benefits: BenefitDoc[];
  realizes: RealizationDoc[];
}

export interface BenefitStatusDoc {
  benefit: string;
  status: BenefitRealization;
  active_realizers: string[];
  inactive_realizers: string[];
}

export interface LayerCoverageDoc {
  layer: number;
  practices: string[];
  enabled_fraction: number;
}

export interface ReportDoc {
  enabled: string[];
  inconsistent: string[];
  frontier: string[];
  in_progress: string[];
  benefits: BenefitStatusDoc[];
  value_attainment: Record<string, number>;
  layer_coverage: LayerCoverageDoc[];
  recommendations: Array<{ practice: string; improves: number }>;
  generated_at: string;
}

export interface PlanStepDoc {
  order: number;
  practice: string;
  unlocks: string[];
}

export interface PlanDoc {
  target: string;
  mode: PlanMode;
  steps: PlanStepDoc[];
}

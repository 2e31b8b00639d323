/** Session controller: a pure view-state machine over service responses.
 * Every displayed status comes from the last fetched report; the client
 * computes no dependency or realization semantics of its own. */

import { ApiClient, ApiError } from './api.js';
import type { AdoptionStatus, ModelDoc, PlanDoc, ReportDoc } from './types.js';

export type Mode = 'commit' | 'whatif';

export interface ViewState {
  model: ModelDoc | null;
  revision: string;
  mode: Mode;
  /** uncommitted what-if adoptions */
  overlay: Record<string, AdoptionStatus>;
  /** report currently driving all colors (committed or overlay view) */
  report: ReportDoc | null;
  /** last committed-state report (kept while exploring overlays) */
  committedReport: ReportDoc | null;
  selected: string | null;
  plan: PlanDoc | null;
  planError: string | null;
  error: string | null;
  staleRevision: boolean;
}

function emptyState(): ViewState {
  return {
    model: null,
    revision: '',
    mode: 'commit',
    overlay: {},
    report: null,
    committedReport: null,
    selected: null,
    plan: null,
    planError: null,
    error: null,
    staleRevision: false,
  };
}

/** Committed status of a practice as the last report tells it. */
export function statusFromReport(report: ReportDoc, practiceId: string): AdoptionStatus {
  if (report.enabled.includes(practiceId) || report.inconsistent.includes(practiceId)) {
    return 'adopted';
  }
  if (report.in_progress.includes(practiceId)) return 'in_progress';
  return 'not_adopted';
}

export class Session {
  state: ViewState = emptyState();

  constructor(
    private api: ApiClient,
    private onChange: (state: ViewState) => void = () => {},
  ) {}

  private emit(): ViewState {
    this.onChange(this.state);
    return this.state;
  }

  async load(): Promise<ViewState> {
    try {
      const { model, revision } = await this.api.getModel();
      const report = await this.api.getAssessment();
      this.state = {
        ...emptyState(),
        mode: this.state.mode,
        model,
        revision,
        report,
        committedReport: report,
      };
    } catch (error) {
      this.state = { ...emptyState(), error: describe(error) };
    }
    return this.emit();
  }

  async setMode(mode: Mode): Promise<ViewState> {
    if (mode === this.state.mode) return this.state;
    // leaving what-if discards the overlay and falls back to committed truth
    this.state = {
      ...this.state,
      mode,
      overlay: {},
      report: this.state.committedReport,
    };
    return this.emit();
  }

  async discardOverlay(): Promise<ViewState> {
    this.state = { ...this.state, overlay: {}, report: this.state.committedReport };
    return this.emit();
  }

  /** Effective status the next toggle flips from: overlay first, then report. */
  effectiveStatus(practiceId: string): AdoptionStatus {
    if (practiceId in this.state.overlay) return this.state.overlay[practiceId];
    if (!this.state.committedReport) return 'not_adopted';
    return statusFromReport(this.state.committedReport, practiceId);
  }

  async togglePractice(practiceId: string): Promise<ViewState> {
    if (!this.state.model) return this.state;
    const next: AdoptionStatus =
      this.effectiveStatus(practiceId) === 'adopted' ? 'not_adopted' : 'adopted';
    try {
      if (this.state.mode === 'commit') {
        await this.api.putAdoption(practiceId, next);
        const report = await this.api.getAssessment();
        const { revision } = await this.api.getModel();
        this.state = {
          ...this.state,
          report,
          committedReport: report,
          revision,
          error: null,
        };
      } else {
        const overlay = { ...this.state.overlay, [practiceId]: next };
        const report = await this.api.whatIf(overlay);
        this.state = { ...this.state, overlay, report, error: null };
      }
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        // the loaded graph no longer matches the server's model
        this.state = { ...this.state, staleRevision: true };
      } else {
        this.state = { ...this.state, error: describe(error) };
      }
    }
    return this.emit();
  }

  /** Commit the current overlay for real, then clear it. */
  async commitOverlay(): Promise<ViewState> {
    const entries = Object.entries(this.state.overlay);
    try {
      for (const [practiceId, status] of entries) {
        await this.api.putAdoption(practiceId, status);
      }
      const report = await this.api.getAssessment();
      const { revision } = await this.api.getModel();
      this.state = {
        ...this.state,
        overlay: {},
        report,
        committedReport: report,
        revision,
      };
    } catch (error) {
      this.state = { ...this.state, error: describe(error) };
    }
    return this.emit();
  }

  async select(id: string | null): Promise<ViewState> {
    this.state = { ...this.state, selected: id, plan: null, planError: null };
    return this.emit();
  }

  async showPlan(target: string, mode: 'partial' | 'full' = 'partial'): Promise<ViewState> {
    try {
      const plan = await this.api.getPlan(target, mode);
      this.state = { ...this.state, selected: target, plan, planError: null };
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.state = { ...this.state, selected: target, plan: null, planError: 'unreachable: no practice realizes this benefit' };
      } else if (error instanceof ApiError && error.status === 404) {
        this.state = { ...this.state, selected: target, plan: null, planError: 'unknown target' };
      } else {
        this.state = { ...this.state, error: describe(error) };
      }
    }
    return this.emit();
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `service error ${error.status}: ${error.message}`;
  if (error instanceof Error) return error.message;
  return String(error);
}

/** Moderator revision loop: pin judgments, launch revise, watch incumbents,
 * accept or reject the suggestion, and re-solve. One revise job may run per
 * session at a time; launching while busy is rejected locally. */

import {
  ApiClient,
  type Analysis,
  type IncumbentEvent,
  type ReviseResponse,
  type RevisionOutcome,
  ServiceError,
} from './api';
import { GridModel } from './grid';

export type WorkflowPhase =
  | 'editing'
  | 'solving'
  | 'reviewing'
  | 'infeasible';

export interface WorkflowState {
  phase: WorkflowPhase;
  analysis: Analysis | null;
  suggestion: RevisionOutcome | null;
  events: IncumbentEvent[];
  /** 1-based pin pairs reported as conflicting by the service. */
  conflictingPins: Array<[number, number]>;
  message: string | null;
}

export class RevisionWorkflow {
  readonly grid: GridModel;
  private sessionId: string | null = null;
  private state: WorkflowState = {
    phase: 'editing',
    analysis: null,
    suggestion: null,
    events: [],
    conflictingPins: [],
    message: null,
  };

  constructor(
    private readonly api: ApiClient,
    grid: GridModel,
  ) {
    this.grid = grid;
  }

  snapshot(): WorkflowState {
    return { ...this.state, events: [...this.state.events] };
  }

  /** Create the service session and fetch the initial analysis. */
  async start(): Promise<Analysis> {
    const session = await this.api.createSession(this.grid.toDocument());
    this.sessionId = session.id;
    return this.refreshAnalysis();
  }

  /** Re-upload the current grid and fetch a fresh analysis. */
  async refreshAnalysis(): Promise<Analysis> {
    const created = await this.api.uploadMatrix(this.grid.toDocument());
    const analysis = await this.api.getAnalysis(created.id);
    this.grid.applyAnalysis(analysis);
    this.state = { ...this.state, analysis };
    return analysis;
  }

  pin(i: number, j: number): void {
    this.grid.setPinned(i, j, true);
  }

  unpin(i: number, j: number): void {
    this.grid.setPinned(i, j, false);
  }

  /** Run revise with the grid's pins. Resolves to the outcome; the grid
   * gets the suggestion staged (not committed). */
  async revise(options: { gci_bar?: number; time_limit?: number } = {}): Promise<RevisionOutcome> {
    if (this.sessionId === null) {
      throw new Error('workflow not started');
    }
    if (this.state.phase === 'solving') {
      throw new Error('a revise job is already running');
    }
    this.state = {
      ...this.state,
      phase: 'solving',
      events: [],
      conflictingPins: [],
      message: null,
    };
    try {
      await this.api.setPins(this.sessionId, this.grid.pins());
      const response: ReviseResponse = await this.api.revise(
        this.sessionId,
        options,
      );
      this.grid.applySuggestion(response.result.changes);
      this.state = {
        ...this.state,
        phase: 'reviewing',
        suggestion: response.result,
        events: response.events,
      };
      return response.result;
    } catch (error) {
      if (error instanceof ServiceError && error.code === 'RevisionInfeasible') {
        const pins = (error.details['pins'] ?? []) as Array<[number, number]>;
        this.state = {
          ...this.state,
          phase: 'infeasible',
          conflictingPins: pins,
          message: `${error.message} — relax one of the conflicting pins`,
        };
      } else {
        this.state = { ...this.state, phase: 'editing' };
      }
      throw error;
    }
  }

  /** Commit the suggestion into the grid and refresh the analysis. */
  async accept(): Promise<Analysis> {
    if (this.state.phase !== 'reviewing') {
      throw new Error('no suggestion to accept');
    }
    this.grid.acceptSuggestion();
    this.state = { ...this.state, phase: 'editing', suggestion: null };
    return this.refreshAnalysis();
  }

  /** Discard the suggestion; the user adjusts pins and re-solves. */
  reject(): void {
    if (this.state.phase !== 'reviewing') {
      throw new Error('no suggestion to reject');
    }
    this.grid.rejectSuggestion();
    this.state = { ...this.state, phase: 'editing', suggestion: null };
  }
}

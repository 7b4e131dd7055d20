/**
 * Explorer state machine.
 *
 * All risk numbers displayed by the UI come from solve responses; this
 * module only tracks constraints, issues requests, and decides which
 * response is current.  One solve is in flight at a time: actions arriving
 * mid-flight collapse into a single trailing request (latest wins), and
 * responses are stamped with a sequence number so a stale reply can never
 * overwrite a newer one.  Responses are cached by their exact request
 * body, so returning to previously shown constraints (e.g. back to the
 * base scenario) reproduces the earlier payload byte-for-byte without
 * re-solving.
 */

import { ApiClient, ApiError } from "./api";
import type { SolveDocument, SolveRequestBody } from "./types";

export interface ExplorerState {
  budget: number;
  locked: number[];
  banned: number[];
  scenario: string | null;
  pending: boolean;
  /** Current result and the raw payload it was parsed from. */
  result: SolveDocument | null;
  resultRaw: string | null;
  /** Result displayed before the current one; feeds the delta panel. */
  previous: SolveDocument | null;
  /** Infeasibility (or other error) banner text; null when hidden. */
  banner: string | null;
}

export type WhatIfAction =
  | { kind: "set-budget"; budget: number }
  | { kind: "toggle-lock"; projectId: number }
  | { kind: "toggle-ban"; projectId: number }
  | { kind: "pick-scenario"; scenario: string | null };

function toggled(ids: number[], id: number): number[] {
  return ids.includes(id)
    ? ids.filter((x) => x !== id)
    : [...ids, id].sort((a, b) => a - b);
}

export class ExplorerController {
  state: ExplorerState;

  private seq = 0;
  private lastApplied = 0;
  private inFlight = false;
  private trailing: SolveRequestBody | null = null;
  private cache = new Map<string, string>();

  constructor(
    private readonly api: ApiClient,
    initialBudget: number,
    private readonly onChange: (state: ExplorerState) => void = () => {},
  ) {
    this.state = {
      budget: initialBudget,
      locked: [],
      banned: [],
      scenario: null,
      pending: false,
      result: null,
      resultRaw: null,
      previous: null,
      banner: null,
    };
  }

  /** The exact body the next solve will send for the current constraints. */
  nextRequestBody(): SolveRequestBody {
    return {
      budget: this.state.budget,
      locked: [...this.state.locked],
      banned: [...this.state.banned],
      scenario: this.state.scenario,
    };
  }

  async dispatch(action: WhatIfAction): Promise<void> {
    switch (action.kind) {
      case "set-budget":
        this.state.budget = action.budget;
        break;
      case "toggle-lock":
        this.state.locked = toggled(this.state.locked, action.projectId);
        // a project cannot be locked and banned at once
        this.state.banned = this.state.banned.filter(
          (id) => id !== action.projectId || !this.state.locked.includes(id),
        );
        break;
      case "toggle-ban":
        this.state.banned = toggled(this.state.banned, action.projectId);
        this.state.locked = this.state.locked.filter(
          (id) => id !== action.projectId || !this.state.banned.includes(id),
        );
        break;
      case "pick-scenario":
        this.state.scenario = action.scenario;
        break;
    }
    return this.requestSolve();
  }

  /** Issue (or queue) a solve for the current constraints. */
  async requestSolve(): Promise<void> {
    const body = this.nextRequestBody();
    if (this.inFlight) {
      this.trailing = body;
      return;
    }
    await this.runSolve(body);
    while (this.trailing) {
      const next = this.trailing;
      this.trailing = null;
      await this.runSolve(next);
    }
  }

  private async runSolve(body: SolveRequestBody): Promise<void> {
    const ticket = ++this.seq;
    const key = JSON.stringify(body);
    this.inFlight = true;
    this.state.pending = true;
    this.onChange(this.state);

    try {
      let raw = this.cache.get(key);
      if (raw === undefined) {
        raw = (await this.api.solve(body)).raw;
        this.cache.set(key, raw);
      }
      if (ticket < this.lastApplied) {
        return; // superseded while awaiting
      }
      this.lastApplied = ticket;
      this.state.previous = this.state.result;
      this.state.result = JSON.parse(raw) as SolveDocument;
      this.state.resultRaw = raw;
      this.state.banner = null;
    } catch (error) {
      if (ticket >= this.lastApplied) {
        this.lastApplied = ticket;
        // displayed results stay as they were; only the banner changes
        this.state.banner =
          error instanceof ApiError
            ? error.status === 422
              ? `Infeasible: ${error.message}`
              : `Request failed: ${error.message}`
            : `Request failed: ${String(error)}`;
      }
    } finally {
      this.inFlight = false;
      this.state.pending = this.trailing !== null;
      this.onChange(this.state);
    }
  }
}

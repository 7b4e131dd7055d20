/**
 * Wire types mirroring the server's canonical machine payloads.
 * The explorer displays these fields verbatim; it never recomputes risk.
 */

export interface SolveRequestBody {
  budget: number;
  locked: number[];
  banned: number[];
  scenario: string | null;
}

export interface SolveResultFields {
  selected: number[];
  objective: number;
  spent: number;
  per_hazard_loss: Record<string, number>;
  optimal: boolean;
  nodes_explored: number;
}

export interface SolveDocument {
  kind: "solve";
  request: {
    budget: number;
    locked: number[];
    banned: number[];
    scenario: string | null;
  };
  result: SolveResultFields;
}

export interface SweepPointDocument {
  budget: number;
  result: SolveResultFields;
}

export interface SweepDocument {
  kind: "sweep";
  request: {
    budgets: number[];
    locked: number[];
    banned: number[];
    scenario: string | null;
  };
  points: SweepPointDocument[];
}

export interface ProjectSummary {
  id: number;
  name: string;
  cost: number;
  grade: string;
  all_hazard: boolean;
  hazards: string[];
  reconstructed: boolean;
}

export interface HazardSummary {
  id: string;
  name: string;
  baseline_probability: number;
  baseline_consequences: Record<string, number>;
}

export interface ModelDocument {
  kind: "model";
  name: string;
  format_version: number;
  default_budget: number;
  consequence_kinds: string[];
  weights: Record<string, number>;
  scheme: {
    grade_alpha: Record<string, number>;
    grade_beta: Record<string, number>;
    halve_all_hazard_beta: boolean;
  };
  hazards: HazardSummary[];
  projects: ProjectSummary[];
}

export interface ScenarioSummary {
  name: string;
  has_scheme_override: boolean;
  has_consequence_override: boolean;
  budget_grid: number[];
}

export interface ScenariosDocument {
  kind: "scenarios";
  scenarios: ScenarioSummary[];
}

export interface ErrorBody {
  code: string;
  message: string;
  field?: string;
}

/** Payloads recorded from the real service (see test/fixtures/). */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type {
  ModelDocument,
  ScenariosDocument,
  SolveDocument,
  SweepDocument,
} from "../src/types";

const here = dirname(fileURLToPath(import.meta.url));

export function raw(name: string): string {
  return readFileSync(join(here, "fixtures", name), "utf-8");
}

export const modelDoc = JSON.parse(raw("model.json")) as ModelDocument;
export const scenariosDoc = JSON.parse(raw("scenarios.json")) as ScenariosDocument;
export const solve700k = JSON.parse(raw("solve_700k.json")) as SolveDocument;
export const solve700kLock17 = JSON.parse(raw("solve_700k_lock17.json")) as SolveDocument;
export const solve700kScenario1 = JSON.parse(
  raw("solve_700k_scenario1.json"),
) as SolveDocument;
export const sweepSmall = JSON.parse(raw("sweep_small.json")) as SweepDocument;
export const infeasibleBody = raw("solve_infeasible.json");

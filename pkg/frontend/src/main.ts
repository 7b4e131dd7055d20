/** Wires the controls, state machine, and render functions together. */

import { ApiClient } from "./api";
import { money } from "./format";
import { renderFrontier } from "./frontier";
import { renderAllocationMatrix, type MatrixSort } from "./matrix";
import { renderBanner, renderDelta, renderObjective, renderPortfolioTable } from "./panels";
import { ExplorerController, type ExplorerState } from "./state";
import type { ModelDocument, SweepDocument } from "./types";

declare global {
  interface Window {
    HAZMIT_API?: string;
  }
}

const SLIDER_DEBOUNCE_MS = 200;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

async function boot(): Promise<void> {
  const api = new ApiClient(window.HAZMIT_API ?? "http://127.0.0.1:8000");
  const model: ModelDocument = await api.model();
  const scenarios = await api.scenarios();

  let sweep: SweepDocument | null = null;
  let matrixSort: MatrixSort = "id";

  const budgetSlider = el<HTMLInputElement>("budget-slider");
  const budgetInput = el<HTMLInputElement>("budget-input");
  const budgetLabel = el<HTMLSpanElement>("budget-label");
  const scenarioSelect = el<HTMLSelectElement>("scenario-select");
  const constraintsLabel = el<HTMLSpanElement>("constraints-label");

  const initialBudget = 1_000_000;
  budgetSlider.max = String(model.default_budget);
  budgetSlider.value = String(initialBudget);
  budgetInput.value = String(initialBudget);

  scenarioSelect.append(new Option("base", ""));
  for (const scenario of scenarios.scenarios) {
    scenarioSelect.append(new Option(scenario.name, scenario.name));
  }

  const controller = new ExplorerController(api, initialBudget, render);

  function render(state: ExplorerState): void {
    budgetLabel.textContent = money(state.budget);
    document.body.classList.toggle("pending", state.pending);
    renderBanner(el("banner"), state.banner);
    renderObjective(el("objective"), state.result);
    renderPortfolioTable(
      el("portfolio"),
      state.result,
      model,
      state.locked,
      (id) => void controller.dispatch({ kind: "toggle-lock", projectId: id }),
      (id) => void controller.dispatch({ kind: "toggle-ban", projectId: id }),
    );
    renderDelta(el("delta"), state.previous, state.result);
    renderFrontier(el("frontier"), sweep, state.budget);
    renderAllocationMatrix(el("matrix"), sweep, model.projects, matrixSort);
    constraintsLabel.textContent =
      `locked: ${state.locked.join(", ") || "none"} · ` +
      `banned: ${state.banned.join(", ") || "none"}`;
  }

  let sliderTimer: number | undefined;
  budgetSlider.addEventListener("input", () => {
    budgetInput.value = budgetSlider.value;
    window.clearTimeout(sliderTimer);
    sliderTimer = window.setTimeout(() => {
      void controller.dispatch({
        kind: "set-budget",
        budget: Number(budgetSlider.value),
      });
    }, SLIDER_DEBOUNCE_MS);
  });

  budgetInput.addEventListener("change", () => {
    budgetSlider.value = budgetInput.value;
    void controller.dispatch({ kind: "set-budget", budget: Number(budgetInput.value) });
  });

  scenarioSelect.addEventListener("change", () => {
    void controller.dispatch({
      kind: "pick-scenario",
      scenario: scenarioSelect.value || null,
    });
  });

  el<HTMLSelectElement>("matrix-sort").addEventListener("change", (event) => {
    matrixSort = (event.target as HTMLSelectElement).value as MatrixSort;
    render(controller.state);
  });

  el<HTMLButtonElement>("run-sweep").addEventListener("click", () => {
    void (async () => {
      const grid = [
        100_000, 300_000, 600_000, 900_000, 2_000_000, 5_000_000, 10_000_000,
      ];
      sweep = await api.sweep(grid, {
        locked: controller.state.locked,
        banned: controller.state.banned,
        scenario: controller.state.scenario,
      });
      render(controller.state);
    })();
  });

  render(controller.state);
  await controller.requestSolve();
}

void boot().catch((error) => {
  const banner = document.getElementById("banner");
  if (banner) {
    banner.classList.remove("hidden");
    banner.textContent = `Failed to reach the service: ${error}`;
  }
});

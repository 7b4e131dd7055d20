import { describe, expect, it } from "vitest";

import { renderAllocationMatrix, sortProjects } from "../src/matrix";
import type { SweepDocument } from "../src/types";
import { modelDoc, sweepSmall } from "./fixtures";

function div(): HTMLElement {
  const node = document.createElement("div");
  document.body.append(node);
  return node;
}

describe("allocation matrix", () => {
  it("highlights exactly the selected cells", () => {
    const container = div();
    renderAllocationMatrix(container, sweepSmall, modelDoc.projects, "id");
    const expected = sweepSmall.points.reduce(
      (count, point) => count + point.result.selected.length,
      0,
    );
    expect(container.querySelectorAll(".selected-cell").length).toBe(expected);
  });

  it("single budget with selection {20} highlights one cell in row 20", () => {
    const single: SweepDocument = {
      kind: "sweep",
      request: { budgets: [24000], locked: [], banned: [], scenario: null },
      points: [
        {
          budget: 24000,
          result: {
            selected: [20], objective: 7.4e9, spent: 24000,
            per_hazard_loss: {}, optimal: true, nodes_explored: 1,
          },
        },
      ],
    };
    const container = div();
    renderAllocationMatrix(container, single, modelDoc.projects, "id");
    expect(container.querySelectorAll(".selected-cell").length).toBe(1);
    const row = container.querySelector('tr[data-project-id="20"]')!;
    expect(row.querySelectorAll(".selected-cell").length).toBe(1);
  });

  it("a project selected at every budget fills its whole row", () => {
    // restrict to the upper budgets, where the recorded sweep has a
    // common core of always-selected projects
    const upper: SweepDocument = { ...sweepSmall, points: sweepSmall.points.slice(2) };
    const everywhere = modelDoc.projects.filter((p) =>
      upper.points.every((point) => point.result.selected.includes(p.id)),
    );
    expect(everywhere.length).toBeGreaterThan(0);
    const container = div();
    renderAllocationMatrix(container, upper, modelDoc.projects, "id");
    const row = container.querySelector(
      `tr[data-project-id="${everywhere[0].id}"]`,
    )!;
    expect(row.querySelectorAll(".selected-cell").length).toBe(
      upper.points.length,
    );
  });

  it("sorts rows by cost, grade, and selection frequency", () => {
    const byCost = sortProjects(modelDoc.projects, sweepSmall, "cost");
    for (let i = 1; i < byCost.length; i++) {
      expect(byCost[i].cost).toBeGreaterThanOrEqual(byCost[i - 1].cost);
    }
    const byGrade = sortProjects(modelDoc.projects, sweepSmall, "grade");
    for (let i = 1; i < byGrade.length; i++) {
      expect(byGrade[i].grade >= byGrade[i - 1].grade).toBe(true);
    }
    const byFreq = sortProjects(modelDoc.projects, sweepSmall, "frequency");
    const freq = (id: number) =>
      sweepSmall.points.filter((p) => p.result.selected.includes(id)).length;
    for (let i = 1; i < byFreq.length; i++) {
      expect(freq(byFreq[i].id)).toBeLessThanOrEqual(freq(byFreq[i - 1].id));
    }
  });

  it("shows an empty state without a sweep", () => {
    const container = div();
    renderAllocationMatrix(container, null, modelDoc.projects, "id");
    expect(container.querySelector(".empty-state")).not.toBeNull();
  });
});

/** Projects-by-budgets allocation grid. */

import { money, moneyFull } from "./format";
import type { ProjectSummary, SweepDocument } from "./types";

export type MatrixSort = "id" | "cost" | "grade" | "frequency";

export function sortProjects(
  projects: ProjectSummary[],
  sweep: SweepDocument,
  sort: MatrixSort,
): ProjectSummary[] {
  const frequency = new Map<number, number>();
  for (const point of sweep.points) {
    for (const id of point.result.selected) {
      frequency.set(id, (frequency.get(id) ?? 0) + 1);
    }
  }
  const rows = [...projects];
  switch (sort) {
    case "cost":
      rows.sort((a, b) => a.cost - b.cost || a.id - b.id);
      break;
    case "grade":
      rows.sort((a, b) => a.grade.localeCompare(b.grade) || a.id - b.id);
      break;
    case "frequency":
      rows.sort(
        (a, b) =>
          (frequency.get(b.id) ?? 0) - (frequency.get(a.id) ?? 0) || a.id - b.id,
      );
      break;
    case "id":
      rows.sort((a, b) => a.id - b.id);
      break;
  }
  return rows;
}

export function renderAllocationMatrix(
  container: HTMLElement,
  sweep: SweepDocument | null,
  projects: ProjectSummary[],
  sort: MatrixSort = "id",
): void {
  container.replaceChildren();
  if (!sweep || sweep.points.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "Run a sweep to see which projects enter at each budget.";
    container.append(empty);
    return;
  }

  const table = document.createElement("table");
  table.className = "allocation-matrix";

  const head = table.createTHead().insertRow();
  for (const label of ["project", "grade", "cost"]) {
    const th = document.createElement("th");
    th.textContent = label;
    head.append(th);
  }
  for (const point of sweep.points) {
    const th = document.createElement("th");
    th.textContent = money(point.budget);
    th.title = moneyFull(point.budget);
    head.append(th);
  }

  const body = table.createTBody();
  for (const project of sortProjects(projects, sweep, sort)) {
    const row = body.insertRow();
    row.dataset.projectId = String(project.id);

    const name = row.insertCell();
    name.textContent = `${project.id}. ${project.name}`;
    if (project.reconstructed) {
      const badge = document.createElement("span");
      badge.className = "badge";
      badge.textContent = "approx";
      badge.title = "hazard mapping or cost is a reconstruction";
      name.append(" ", badge);
    }
    row.insertCell().textContent = project.grade;
    const cost = row.insertCell();
    cost.textContent = money(project.cost);
    cost.title = moneyFull(project.cost);

    for (const point of sweep.points) {
      const cell = row.insertCell();
      if (point.result.selected.includes(project.id)) {
        cell.className = "selected-cell";
        cell.textContent = "■";
      }
    }
  }

  container.append(table);
}

/** Portfolio table, objective readout, delta panel, infeasibility banner. */

import { money, moneyFull, idList } from "./format";
import type { ModelDocument, SolveDocument } from "./types";

export function renderObjective(container: HTMLElement, result: SolveDocument | null): void {
  container.replaceChildren();
  if (!result) {
    container.textContent = "—";
    return;
  }
  const value = document.createElement("span");
  value.className = "objective-value";
  value.textContent = money(result.result.objective);
  value.title = moneyFull(result.result.objective);
  const detail = document.createElement("span");
  detail.className = "objective-detail";
  const optimal = result.result.optimal ? "optimal" : "heuristic";
  detail.textContent =
    ` expected loss · spent ${money(result.result.spent)} · ${optimal}`;
  detail.title = `spent ${moneyFull(result.result.spent)}`;
  container.append(value, detail);
}

export function renderPortfolioTable(
  container: HTMLElement,
  result: SolveDocument | null,
  model: ModelDocument | null,
  lockedIds: number[],
  onToggleLock: (id: number) => void,
  onToggleBan: (id: number) => void,
): void {
  container.replaceChildren();
  if (!result) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No solve yet.";
    container.append(empty);
    return;
  }
  const table = document.createElement("table");
  table.className = "portfolio-table";
  const head = table.createTHead().insertRow();
  for (const label of ["id", "project", "grade", "cost", "lock", "ban"]) {
    const th = document.createElement("th");
    th.textContent = label;
    head.append(th);
  }
  const body = table.createTBody();
  for (const id of result.result.selected) {
    const project = model?.projects.find((p) => p.id === id);
    const row = body.insertRow();
    row.dataset.projectId = String(id);
    row.insertCell().textContent = String(id);
    const name = row.insertCell();
    name.textContent = project ? project.name : `project ${id}`;
    if (project?.reconstructed) {
      const badge = document.createElement("span");
      badge.className = "badge";
      badge.textContent = "approx";
      badge.title = "hazard mapping or cost is a reconstruction";
      name.append(" ", badge);
    }
    row.insertCell().textContent = project?.grade ?? "?";
    const cost = row.insertCell();
    if (project) {
      cost.textContent = money(project.cost);
      cost.title = moneyFull(project.cost);
    }
    const lock = row.insertCell().appendChild(document.createElement("button"));
    lock.textContent = lockedIds.includes(id) ? "locked" : "lock";
    lock.className = "lock-toggle";
    lock.addEventListener("click", () => onToggleLock(id));
    const ban = row.insertCell().appendChild(document.createElement("button"));
    ban.textContent = "ban";
    ban.className = "ban-toggle";
    ban.addEventListener("click", () => onToggleBan(id));
  }
  container.append(table);
}

export function renderDelta(
  container: HTMLElement,
  previous: SolveDocument | null,
  current: SolveDocument | null,
): void {
  container.replaceChildren();
  if (!previous || !current) {
    container.textContent = "";
    return;
  }
  const before = new Set(previous.result.selected);
  const after = new Set(current.result.selected);
  const added = current.result.selected.filter((id) => !before.has(id));
  const removed = previous.result.selected.filter((id) => !after.has(id));

  const list = document.createElement("dl");
  list.className = "delta-panel";

  const entry = (label: string, text: string, cls: string) => {
    const dt = document.createElement("dt");
    dt.textContent = label;
    const dd = document.createElement("dd");
    dd.textContent = text;
    dd.className = cls;
    list.append(dt, dd);
  };
  entry("added", idList(added), "delta-added");
  entry("removed", idList(removed), "delta-removed");
  entry(
    "objective",
    `${money(previous.result.objective)} → ${money(current.result.objective)}`,
    "delta-objective",
  );
  container.append(list);
}

export function renderBanner(container: HTMLElement, banner: string | null): void {
  container.replaceChildren();
  container.classList.toggle("hidden", banner === null);
  if (banner !== null) {
    container.textContent = banner;
  }
}

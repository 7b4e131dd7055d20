/** Budget-versus-objective frontier chart (plain SVG). */

import { money, moneyFull, idList } from "./format";
import type { SweepDocument } from "./types";

const WIDTH = 640;
const HEIGHT = 280;
const PAD = 44;

const SVG_NS = "http://www.w3.org/2000/svg";

function scale(value: number, lo: number, hi: number, outLo: number, outHi: number): number {
  if (hi === lo) {
    return (outLo + outHi) / 2;
  }
  return outLo + ((value - lo) / (hi - lo)) * (outHi - outLo);
}

export function renderFrontier(
  container: HTMLElement,
  sweep: SweepDocument | null,
  currentBudget: number | null,
): void {
  container.replaceChildren();
  if (!sweep || sweep.points.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No sweep yet. Run a sweep to see the budget frontier.";
    container.append(empty);
    return;
  }

  const points = sweep.points;
  const budgets = points.map((p) => p.budget);
  const objectives = points.map((p) => p.result.objective);
  const [bLo, bHi] = [Math.min(...budgets), Math.max(...budgets)];
  const [oLo, oHi] = [Math.min(...objectives), Math.max(...objectives)];

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "frontier");

  const x = (b: number) => scale(b, bLo, bHi, PAD, WIDTH - PAD);
  const y = (o: number) => scale(o, oLo, oHi, HEIGHT - PAD, PAD);

  if (points.length > 1) {
    const line = document.createElementNS(SVG_NS, "polyline");
    line.setAttribute(
      "points",
      points.map((p) => `${x(p.budget)},${y(p.result.objective)}`).join(" "),
    );
    line.setAttribute("class", "frontier-line");
    line.setAttribute("fill", "none");
    svg.append(line);
  }

  for (const point of points) {
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(x(point.budget)));
    dot.setAttribute("cy", String(y(point.result.objective)));
    dot.setAttribute("r", "4");
    dot.setAttribute("class", "frontier-point");
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent =
      `budget ${moneyFull(point.budget)}\n` +
      `objective ${moneyFull(point.result.objective)}\n` +
      `portfolio: ${idList(point.result.selected)}`;
    dot.append(title);
    svg.append(dot);
  }

  if (currentBudget !== null && currentBudget >= bLo && currentBudget <= bHi) {
    const marker = document.createElementNS(SVG_NS, "line");
    marker.setAttribute("x1", String(x(currentBudget)));
    marker.setAttribute("x2", String(x(currentBudget)));
    marker.setAttribute("y1", String(PAD / 2));
    marker.setAttribute("y2", String(HEIGHT - PAD));
    marker.setAttribute("class", "current-budget");
    svg.append(marker);
  }

  const xLabel = document.createElementNS(SVG_NS, "text");
  xLabel.setAttribute("x", String(WIDTH / 2));
  xLabel.setAttribute("y", String(HEIGHT - 8));
  xLabel.setAttribute("class", "axis-label");
  xLabel.textContent = `budget (${money(bLo)} to ${money(bHi)})`;
  svg.append(xLabel);

  const yLabel = document.createElementNS(SVG_NS, "text");
  yLabel.setAttribute("x", "8");
  yLabel.setAttribute("y", String(PAD / 2));
  yLabel.setAttribute("class", "axis-label");
  yLabel.textContent = `expected loss (${money(oLo)} to ${money(oHi)})`;
  svg.append(yLabel);

  container.append(svg);
}

import { describe, expect, it } from "vitest";

import { renderFrontier } from "../src/frontier";
import type { SweepDocument } from "../src/types";
import { sweepSmall } from "./fixtures";

function div(): HTMLElement {
  const node = document.createElement("div");
  document.body.append(node);
  return node;
}

describe("frontier chart", () => {
  it("shows an empty-state message without a sweep", () => {
    const container = div();
    renderFrontier(container, null, null);
    expect(container.querySelector(".empty-state")).not.toBeNull();
    expect(container.querySelector("svg")).toBeNull();
  });

  it("renders a single point as a marker with no line", () => {
    const single: SweepDocument = {
      ...sweepSmall,
      points: [sweepSmall.points[0]],
    };
    const container = div();
    renderFrontier(container, single, null);
    expect(container.querySelectorAll("circle").length).toBe(1);
    expect(container.querySelector("polyline")).toBeNull();
  });

  it("renders the recorded monotone sweep as a non-increasing curve", () => {
    const container = div();
    renderFrontier(container, sweepSmall, null);
    const dots = [...container.querySelectorAll("circle")];
    expect(dots.length).toBe(sweepSmall.points.length);
    // svg y grows downward, so falling objectives give non-decreasing cy
    const ys = dots.map((dot) => Number(dot.getAttribute("cy")));
    for (let i = 1; i < ys.length; i++) {
      expect(ys[i]).toBeGreaterThanOrEqual(ys[i - 1]);
    }
    expect(container.querySelector("polyline")).not.toBeNull();
  });

  it("reveals the portfolio of a point on hover", () => {
    const container = div();
    renderFrontier(container, sweepSmall, null);
    const titles = [...container.querySelectorAll("circle title")];
    const lastPoint = sweepSmall.points.at(-1)!;
    const lastTitle = titles.at(-1)!.textContent ?? "";
    for (const id of lastPoint.result.selected) {
      expect(lastTitle).toContain(String(id));
    }
  });

  it("marks the current budget", () => {
    const container = div();
    const current = sweepSmall.points[2].budget;
    renderFrontier(container, sweepSmall, current);
    expect(container.querySelector(".current-budget")).not.toBeNull();
  });
});

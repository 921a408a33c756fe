import { describe, expect, it } from "vitest";

import { BAR_POINT_LIMIT, renderChart, yTicks } from "../src/chart.js";

function uniformPoints(n: number) {
  return Array.from({ length: n }, (_, k) => ({
    k,
    phase: (2 * Math.PI * k) / n,
    probability: 1 / n,
  }));
}

describe("renderChart", () => {
  it("draws bars for small registers", () => {
    const svg = renderChart([{ label: "small", points: uniformPoints(10) }]);
    expect(svg.match(/class="series-bar"/g)).toHaveLength(10);
    expect(svg).not.toContain("series-line");
  });

  it("draws a line above the bar limit", () => {
    const svg = renderChart([{ label: "big", points: uniformPoints(100) }]);
    expect(svg.match(/class="series-line"/g)).toHaveLength(1);
    expect(svg).not.toContain("series-bar");
  });

  it("uses the bar limit as the boundary", () => {
    const atLimit = renderChart([{ label: "a", points: uniformPoints(BAR_POINT_LIMIT) }]);
    expect(atLimit).toContain("series-bar");
    const aboveLimit = renderChart([
      { label: "b", points: uniformPoints(BAR_POINT_LIMIT + 1) },
    ]);
    expect(aboveLimit).toContain("series-line");
  });

  it("renders one legend entry per series with distinct colors", () => {
    const svg = renderChart([
      { label: "first", points: uniformPoints(10) },
      { label: "second", points: uniformPoints(100) },
    ]);
    expect(svg.match(/class="legend-label"/g)).toHaveLength(2);
    expect(svg).toContain(">first</text>");
    expect(svg).toContain(">second</text>");
    expect(svg).toContain("#2b6cb0");
    expect(svg).toContain("#c05621");
  });

  it("escapes markup in titles and labels", () => {
    const svg = renderChart([{ label: "<b>&x", points: uniformPoints(4) }], {
      title: 'a "<title>"',
    });
    expect(svg).toContain("&lt;b&gt;&amp;x");
    expect(svg).toContain("a &quot;&lt;title&gt;&quot;");
    expect(svg).not.toContain("<b>&x");
  });

  it("covers the full phase axis", () => {
    const svg = renderChart([{ label: "s", points: uniformPoints(8) }]);
    expect(svg).toContain(">2π</text>");
    expect(svg).toContain("phase 2πK/N");
  });
});

describe("yTicks", () => {
  it("produces nice round steps covering the maximum", () => {
    const ticks = yTicks(0.9);
    expect(ticks[0]).toBe(0);
    expect(ticks.at(-1)!).toBeLessThanOrEqual(0.9);
    expect(ticks.length).toBeGreaterThanOrEqual(4);
  });

  it("handles tiny maxima", () => {
    const ticks = yTicks(0.011);
    expect(ticks.length).toBeGreaterThanOrEqual(3);
    expect(Math.max(...ticks)).toBeLessThanOrEqual(0.011);
  });
});

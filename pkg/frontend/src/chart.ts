/**
 * SVG chart assembly: probability vs phase on one axes.
 *
 * Series with at most BAR_POINT_LIMIT points render as bars (low-resolution
 * registers read better that way); larger series render as lines. The x
 * axis is fixed to one full phase turn [0, 2*pi) so runs with different
 * register dimensions are directly comparable.
 */

import type { DistributionPoint } from "./csv.js";

export const BAR_POINT_LIMIT = 20;

export interface ChartSeries {
  label: string;
  points: DistributionPoint[];
}

export interface ChartOptions {
  title?: string;
  width?: number;
  height?: number;
}

const PALETTE = ["#2b6cb0", "#c05621", "#2f855a", "#6b46c1", "#c53030", "#4a5568"];

const MARGIN = { top: 48, right: 24, bottom: 46, left: 64 };

const X_TICKS: Array<[number, string]> = [
  [0, "0"],
  [Math.PI / 2, "π/2"],
  [Math.PI, "π"],
  [(3 * Math.PI) / 2, "3π/2"],
  [2 * Math.PI, "2π"],
];

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function niceStep(rough: number): number {
  const power = 10 ** Math.floor(Math.log10(rough));
  for (const mult of [1, 2, 5, 10]) {
    if (mult * power >= rough) return mult * power;
  }
  return 10 * power;
}

export function yTicks(yMax: number, count = 5): number[] {
  const step = niceStep(yMax / count);
  const ticks: number[] = [];
  for (let v = 0; v <= yMax + 1e-12; v += step) ticks.push(Number(v.toPrecision(12)));
  return ticks;
}

export function renderChart(series: ChartSeries[], options: ChartOptions = {}): string {
  const width = options.width ?? 760;
  const height = options.height ?? 420;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const yMaxData = Math.max(...series.flatMap((s) => s.points.map((p) => p.probability)));
  const yMax = yMaxData <= 0 ? 1 : yMaxData * 1.08;
  const xSpan = 2 * Math.PI;
  const x = (phase: number) => MARGIN.left + (phase / xSpan) * plotW;
  const y = (prob: number) => MARGIN.top + plotH - (prob / yMax) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);

  if (options.title) {
    parts.push(
      `<text x="${width / 2}" y="24" text-anchor="middle" font-size="16">` +
        `${escapeXml(options.title)}</text>`,
    );
  }

  // axes
  const x0 = MARGIN.left;
  const y0 = MARGIN.top + plotH;
  parts.push(
    `<line x1="${x0}" y1="${y0}" x2="${x0 + plotW}" y2="${y0}" stroke="black"/>`,
    `<line x1="${x0}" y1="${MARGIN.top}" x2="${x0}" y2="${y0}" stroke="black"/>`,
  );
  for (const [value, label] of X_TICKS) {
    const px = x(value);
    parts.push(
      `<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" stroke="black"/>`,
      `<text x="${px}" y="${y0 + 20}" text-anchor="middle">${label}</text>`,
    );
  }
  for (const tick of yTicks(yMax)) {
    const py = y(tick);
    parts.push(
      `<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" stroke="black"/>`,
      `<line x1="${x0}" y1="${py}" x2="${x0 + plotW}" y2="${py}" stroke="#e5e5e5"/>`,
      `<text x="${x0 - 9}" y="${py + 4}" text-anchor="end">${formatTick(tick)}</text>`,
    );
  }
  parts.push(
    `<text x="${x0 + plotW / 2}" y="${height - 8}" text-anchor="middle">phase 2πK/N</text>`,
    `<text x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">probability</text>`,
  );

  series.forEach((s, index) => {
    const color = PALETTE[index % PALETTE.length];
    if (s.points.length <= BAR_POINT_LIMIT) {
      const binWidth = (plotW / s.points.length) * 0.8;
      for (const p of s.points) {
        const px = x(p.phase) - binWidth / 2;
        const py = y(p.probability);
        parts.push(
          `<rect class="series-bar" x="${round2(px)}" y="${round2(py)}" ` +
            `width="${round2(binWidth)}" height="${round2(y0 - py)}" ` +
            `fill="${color}" fill-opacity="0.75"/>`,
        );
      }
    } else {
      const coords = s.points
        .map((p) => `${round2(x(p.phase))},${round2(y(p.probability))}`)
        .join(" ");
      parts.push(
        `<polyline class="series-line" points="${coords}" fill="none" ` +
          `stroke="${color}" stroke-width="1.5"/>`,
      );
    }
  });

  // legend
  series.forEach((s, index) => {
    const color = PALETTE[index % PALETTE.length];
    const ly = MARGIN.top + 6 + index * 18;
    const lx = x0 + plotW - 10;
    parts.push(
      `<rect x="${lx - 12}" y="${ly - 9}" width="12" height="12" fill="${color}"/>`,
      `<text class="legend-label" x="${lx - 18}" y="${ly + 1}" text-anchor="end">` +
        `${escapeXml(s.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function formatTick(value: number): string {
  return value === 0 ? "0" : value.toPrecision(3).replace(/\.?0+$/, "");
}

function round2(value: number): number {
  return Math.round(value * 100) / 100;
}

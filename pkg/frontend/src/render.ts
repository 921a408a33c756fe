/**
 * Plot assembly: load and validate every input, build one SVG, write it
 * atomically (temp file + rename) so a crash never leaves a partial image.
 */

import { renameSync, unlinkSync, writeFileSync } from "node:fs";

import { renderChart } from "./chart.js";
import { loadSeries, SchemaError } from "./csv.js";

export interface PlotSpec {
  inputs: string[];
  out: string;
  title?: string;
  overlay: boolean;
}

export class PlotInputError extends Error {
  constructor(public readonly problems: string[]) {
    super(problems.join("\n"));
    this.name = "PlotInputError";
  }
}

export function render(spec: PlotSpec): { out: string; seriesCount: number } {
  if (spec.inputs.length === 0) {
    throw new PlotInputError(["no input CSV files given"]);
  }
  if (spec.inputs.length > 1 && !spec.overlay) {
    throw new PlotInputError([
      `${spec.inputs.length} input files given without --overlay; ` +
        "pass --overlay to draw them on one axes",
    ]);
  }

  const problems: string[] = [];
  const series = [];
  for (const input of spec.inputs) {
    try {
      series.push(loadSeries(input));
    } catch (err) {
      if (err instanceof SchemaError) {
        problems.push(err.message);
      } else {
        throw err;
      }
    }
  }
  if (problems.length > 0) {
    throw new PlotInputError(problems);
  }

  const svg = renderChart(
    series.map((s) => ({ label: s.label, points: s.points })),
    { title: spec.title },
  );
  writeAtomically(spec.out, svg);
  return { out: spec.out, seriesCount: series.length };
}

function writeAtomically(path: string, content: string): void {
  const temp = `${path}.tmp-${process.pid}`;
  writeFileSync(temp, content, "utf8");
  try {
    renameSync(temp, path);
  } catch (err) {
    unlinkSync(temp);
    throw err;
  }
}

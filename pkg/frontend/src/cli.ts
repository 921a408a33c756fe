/**
 * `plot <csv>... --out <path> [--title <str>] [--overlay]`
 *
 * Renders one or more phase-estimation distribution CSVs into a single SVG
 * chart. Multiple inputs require --overlay and share one axes; series
 * labels come from each input's `<csv>.meta` sidecar when present.
 */

import { parseArgs } from "node:util";

import { PlotInputError, render } from "./render.js";

const USAGE = "usage: plot <csv>... --out <path> [--title <str>] [--overlay]";

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        out: { type: "string" },
        title: { type: "string" },
        overlay: { type: "boolean", default: false },
        help: { type: "boolean", default: false },
      },
    });
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    console.error(USAGE);
    return 2;
  }

  if (parsed.values.help) {
    console.log(USAGE);
    return 0;
  }
  if (!parsed.values.out) {
    console.error("error: --out is required");
    console.error(USAGE);
    return 2;
  }
  if (parsed.positionals.length === 0) {
    console.error("error: at least one input CSV is required");
    console.error(USAGE);
    return 2;
  }

  try {
    const result = render({
      inputs: parsed.positionals,
      out: parsed.values.out,
      title: parsed.values.title,
      overlay: parsed.values.overlay ?? false,
    });
    console.log(`wrote ${result.out} (${result.seriesCount} series)`);
    return 0;
  } catch (err) {
    if (err instanceof PlotInputError) {
      for (const problem of err.problems) {
        console.error(`error: ${problem}`);
      }
      return 1;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

/**
 * Reader for the pipeline's distribution CSV and its metadata sidecar.
 *
 * The CSV schema is `K,phase,probability` with one row per register value:
 * K counts 0..N-1, phase equals 2*pi*K/N, probabilities are nonnegative and
 * sum to 1. A sidecar at `<csv>.meta` holds flat `key = value` run metadata
 * and, when present, supplies the series label.
 */

import { existsSync, readFileSync } from "node:fs";

export interface DistributionPoint {
  k: number;
  phase: number;
  probability: number;
}

export interface DistributionSeries {
  path: string;
  points: DistributionPoint[];
  metadata: Record<string, string> | null;
  label: string;
}

export class SchemaError extends Error {
  constructor(
    public readonly file: string,
    detail: string,
  ) {
    super(`${file}: ${detail}`);
    this.name = "SchemaError";
  }
}

const HEADER = "K,phase,probability";

export function parseDistributionCsv(path: string): DistributionPoint[] {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new SchemaError(path, `cannot read file (${(err as Error).message})`);
  }
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(path, "file is empty");
  }
  if (lines[0] !== HEADER) {
    throw new SchemaError(path, `expected header '${HEADER}', got '${lines[0]}'`);
  }
  if (lines.length === 1) {
    throw new SchemaError(path, "no data rows");
  }
  const points: DistributionPoint[] = [];
  for (let i = 1; i < lines.length; i++) {
    const fields = lines[i].split(",");
    if (fields.length !== 3) {
      throw new SchemaError(path, `row ${i}: expected 3 fields, got ${fields.length}`);
    }
    const k = Number(fields[0]);
    const phase = Number(fields[1]);
    const probability = Number(fields[2]);
    if (!Number.isInteger(k) || k !== i - 1) {
      throw new SchemaError(path, `row ${i}: K must count 0..N-1, got '${fields[0]}'`);
    }
    if (!Number.isFinite(phase) || !Number.isFinite(probability)) {
      throw new SchemaError(path, `row ${i}: non-numeric phase or probability`);
    }
    if (probability < -1e-12) {
      throw new SchemaError(path, `row ${i}: negative probability ${probability}`);
    }
    points.push({ k, phase, probability });
  }
  const n = points.length;
  for (const { k, phase } of points) {
    if (Math.abs(phase - (2 * Math.PI * k) / n) > 1e-9) {
      throw new SchemaError(path, `row ${k + 1}: phase is not 2*pi*K/N for N=${n}`);
    }
  }
  const total = points.reduce((acc, p) => acc + p.probability, 0);
  if (Math.abs(total - 1) > 1e-6) {
    throw new SchemaError(path, `probabilities sum to ${total}, expected 1`);
  }
  return points;
}

export function readMetadataSidecar(csvPath: string): Record<string, string> | null {
  const sidecar = `${csvPath}.meta`;
  if (!existsSync(sidecar)) return null;
  const metadata: Record<string, string> = {};
  for (const raw of readFileSync(sidecar, "utf8").split(/\r?\n/)) {
    const line = raw.trim();
    if (!line || line.startsWith("#")) continue;
    const eq = line.indexOf("=");
    if (eq < 0) continue;
    metadata[line.slice(0, eq).trim()] = line.slice(eq + 1).trim();
  }
  return metadata;
}

export function seriesLabel(
  csvPath: string,
  metadata: Record<string, string> | null,
): string {
  if (!metadata || !metadata["molecule"]) {
    const basename = csvPath.split("/").pop() ?? csvPath;
    return basename.replace(/\.csv$/, "");
  }
  const parts = [metadata["molecule"]];
  if (metadata["registers"]) parts.push(`N=${metadata["registers"]}`);
  if (metadata["order"]) parts.push(`order=${metadata["order"]}`);
  return parts.join(" ");
}

export function loadSeries(path: string): DistributionSeries {
  const points = parseDistributionCsv(path);
  const metadata = readMetadataSidecar(path);
  return { path, points, metadata, label: seriesLabel(path, metadata) };
}

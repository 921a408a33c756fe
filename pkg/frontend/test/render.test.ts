import { mkdtempSync, readdirSync, readFileSync, statSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { PlotInputError, render } from "../src/render.js";

const fixture = (name: string) =>
  fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));

function tempDir(): string {
  return mkdtempSync(join(tmpdir(), "plot-render-"));
}

describe("render", () => {
  it("writes an SVG for a single input", () => {
    const out = join(tempDir(), "single.svg");
    const result = render({ inputs: [fixture("h2_nospin_n10.csv")], out, overlay: false });
    expect(result.seriesCount).toBe(1);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain("<svg");
    expect(svg).toContain("H2-nospin N=10 order=2");
  });

  it("overlays two runs on one axes", () => {
    const out = join(tempDir(), "overlay.svg");
    const result = render({
      inputs: [fixture("h2_nospin_n10.csv"), fixture("h2_nospin_n100.csv")],
      out,
      title: "register resolution",
      overlay: true,
    });
    expect(result.seriesCount).toBe(2);
    const svg = readFileSync(out, "utf8");
    expect(svg).toContain("series-bar");
    expect(svg).toContain("series-line");
    expect(svg).toContain("register resolution");
  });

  it("refuses multiple inputs without overlay", () => {
    const out = join(tempDir(), "never.svg");
    expect(() =>
      render({
        inputs: [fixture("h2_nospin_n10.csv"), fixture("h2_nospin_n100.csv")],
        out,
        overlay: false,
      }),
    ).toThrowError(/--overlay/);
  });

  it("reports schema problems for every bad file", () => {
    const dir = tempDir();
    const badA = join(dir, "a.csv");
    const badB = join(dir, "b.csv");
    writeFileSync(badA, "");
    writeFileSync(badB, "not,a,header\n");
    try {
      render({ inputs: [badA, badB], out: join(dir, "out.svg"), overlay: true });
      expect.unreachable();
    } catch (err) {
      const problems = (err as PlotInputError).problems;
      expect(problems).toHaveLength(2);
      expect(problems[0]).toContain("a.csv");
      expect(problems[1]).toContain("b.csv");
    }
  });

  it("does not mutate its inputs and leaves no temp files", () => {
    const input = fixture("h2_spin_n10.csv");
    const before = readFileSync(input, "utf8");
    const mtime = statSync(input).mtimeMs;
    const dir = tempDir();
    render({ inputs: [input], out: join(dir, "plot.svg"), overlay: false });
    expect(readFileSync(input, "utf8")).toBe(before);
    expect(statSync(input).mtimeMs).toBe(mtime);
    expect(readdirSync(dir)).toEqual(["plot.svg"]);
  });
});

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import path from "node:path";
import { describe, expect, it } from "vitest";
import {
  GAP_TOLERANCE,
  GapError,
  PresetDataError,
  renderFig1,
  renderFig2,
  renderPreset,
} from "../src/figures.js";
import { CSV_HEADER, parseBenchCsv } from "../src/schema.js";
import { SchemaError } from "../src/schema.js";

const FIXTURES = path.join(
  path.dirname(fileURLToPath(import.meta.url)),
  "fixtures",
);

function fixture(name: string): string {
  return readFileSync(path.join(FIXTURES, name), "utf-8");
}

/** Shift one row's value by delta, keeping abs_error self-consistent. */
function tamperValue(csv: string, lineIndex: number, delta: number): string {
  const lines = csv.trimEnd().split("\n");
  const fields = lines[lineIndex]!.split(",");
  const value = Number(fields[3]) + delta;
  const reference = Number(fields[4]);
  fields[3] = String(value);
  fields[5] = String(Math.abs(value - reference));
  lines[lineIndex] = fields.join(",");
  return lines.join("\n") + "\n";
}

describe("fig1", () => {
  it("renders the fixture and reports a gap under tolerance", () => {
    const { svg, notes } = renderPreset("fig1", fixture("fig1.csv"));
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("</svg>");
    expect(svg).toContain("I(N, alpha)");
    // One open-circle marker per row plus one legend marker.
    expect(svg.match(/fill="none" stroke="#/g)!.length).toBeGreaterThan(48);
    const gapNote = notes.find((n) => n.includes("marker-curve gap"));
    expect(gapNote).toBeDefined();
    const gap = Number(gapNote!.match(/gap ([-\d.e+]+)/)![1]);
    expect(gap).toBeLessThan(GAP_TOLERANCE);
  });

  it("draws one curve and one legend entry per N", () => {
    const { svg } = renderPreset("fig1", fixture("fig1.csv"));
    for (const n of [2, 5, 10, 15]) {
      expect(svg).toContain(`N = ${n}`);
    }
    expect(svg).toContain("reference");
  });

  it("aborts with GapError when a value is nudged off its reference", () => {
    const tampered = tamperValue(fixture("fig1.csv"), 5, 1e-5);
    // The tampered file still satisfies the schema...
    expect(() => parseBenchCsv(tampered)).not.toThrow();
    // ...but the marker-curve gap check must fail before drawing.
    expect(() => renderPreset("fig1", tampered)).toThrow(GapError);
    expect(() => renderPreset("fig1", tampered)).toThrow(/exceeds tolerance/);
  });

  it("tolerates a nudge below the gap tolerance", () => {
    const tampered = tamperValue(fixture("fig1.csv"), 5, 1e-8);
    expect(() => renderPreset("fig1", tampered)).not.toThrow();
  });

  it("treats a non-finite value as a gap failure", () => {
    const bad =
      `${CSV_HEADER}\n` + "gegenbauer,2,0.5,nan,4.0,nan,0.001,16,44\n";
    expect(() => renderFig1(parseBenchCsv(bad))).toThrow(GapError);
    expect(() => renderFig1(parseBenchCsv(bad))).toThrow(/non-finite/);
  });
});

describe("fig2", () => {
  it("flags the native-precision monomial routes as diverged", () => {
    const { notes } = renderPreset("fig2", fixture("fig2.csv"));
    const m2 = notes.find((n) => n.startsWith("method2"));
    expect(m2).toBeDefined();
    expect(m2).toContain("diverged");
  });

  it("shows the spectral routes hugging the noise floor", () => {
    const rows = parseBenchCsv(fixture("fig2.csv"));
    for (const method of ["galerkin", "volterra", "gegenbauer"]) {
      const errs = rows
        .filter((r) => r.method === method)
        .map((r) => r.absError);
      expect(Math.max(...errs)).toBeLessThan(1e-8);
    }
    const { notes } = renderPreset("fig2", fixture("fig2.csv"));
    for (const method of ["galerkin", "volterra", "gegenbauer"]) {
      const note = notes.find((n) => n.startsWith(method));
      expect(note).not.toContain("diverged");
    }
  });

  it("marks diverged methods in the legend", () => {
    const { svg } = renderPreset("fig2", fixture("fig2.csv"));
    expect(svg).toContain("method2 (diverged)");
    expect(svg).toContain(">gegenbauer<");
    expect(svg).toContain("abs_error");
    expect(svg).toContain("seconds");
  });

  it("renders synthetic nan cells without throwing", () => {
    const methods = [
      "method1",
      "method2",
      "method3",
      "galerkin",
      "volterra",
      "gegenbauer",
    ];
    const lines = [CSV_HEADER];
    for (const m of methods) {
      for (const alpha of [0.5, 1.5, 2.5]) {
        if (m === "method2") {
          lines.push(`${m},20,${alpha},nan,263.6,nan,0.002,16,99`);
        } else {
          lines.push(`${m},20,${alpha},263.6,263.6,0,0.002,16,99`);
        }
      }
    }
    const { svg, notes } = renderPreset("fig2", lines.join("\n") + "\n");
    expect(svg.startsWith("<svg")).toBe(true);
    expect(notes.find((n) => n.startsWith("method2"))).toContain("diverged");
  });

  it("rejects a CSV missing a required method", () => {
    // fig1 data only carries the production route, so fig2 must refuse it.
    expect(() => renderFig2(parseBenchCsv(fixture("fig1.csv")))).toThrow(
      PresetDataError,
    );
    expect(() => renderFig2(parseBenchCsv(fixture("fig1.csv")))).toThrow(
      /"method1"/,
    );
  });
});

describe("fig3", () => {
  it("renders curves per N with a relative-deviation inset", () => {
    const { svg, notes } = renderPreset("fig3", fixture("fig3.csv"));
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg).toContain("relative deviation");
    for (const n of [10, 100, 1000]) {
      expect(svg).toContain(`N = ${n}`);
      expect(notes.some((note) => note.startsWith(`N=${n}`))).toBe(true);
    }
    // Dashed asymptote curves are present alongside the solid ones.
    expect(svg).toContain("stroke-dasharray");
  });

  it("shows the deviation shrinking as N grows", () => {
    const { notes } = renderPreset("fig3", fixture("fig3.csv"));
    const dev = new Map(
      notes
        .filter((n) => n.includes("relative deviation"))
        .map((n) => {
          const m = n.match(/^N=(\d+) max relative deviation ([-\d.e+]+)$/)!;
          return [Number(m[1]), Number(m[2])] as const;
        }),
    );
    expect(dev.get(10)!).toBeGreaterThan(dev.get(100)!);
    expect(dev.get(100)!).toBeGreaterThan(dev.get(1000)!);
  });
});

describe("renderPreset plumbing", () => {
  it("propagates schema errors for empty input", () => {
    expect(() => renderPreset("fig1", "")).toThrow(SchemaError);
    expect(() => renderPreset("fig2", `${CSV_HEADER}\n`)).toThrow(
      /no data rows/,
    );
  });
});

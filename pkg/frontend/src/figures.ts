/**
 * Preset figure renderers over the bench CSV.
 *
 * fig1: integral value vs alpha per N, reference values as open circles.
 * fig2: stacked abs_error / seconds panels per method at fixed N.
 * fig3: spectral vs asymptotic curves per N with a relative-deviation inset.
 *
 * Everything here is display over parsed CSV columns. No integral is
 * recomputed; the only numeric logic is the fig1 marker-curve gap check,
 * which must pass before any drawing happens.
 */

import {
  BenchRow,
  groupBy,
  methodsPresent,
  parseBenchCsv,
} from "./schema.js";
import {
  PALETTE,
  PanelFrame,
  Point,
  axes,
  document as svgDocument,
  legend,
  linearScale,
  logScale,
  markers,
  polyline,
} from "./svg.js";

export type PresetName = "fig1" | "fig2" | "fig3";

export interface FigureSpec {
  preset: PresetName;
  inputCsv: string;
  outputImage: string;
  /** fig2 only: plot the top panel's abs_error on a log axis. */
  logErrorAxis: boolean;
}

export interface RenderResult {
  svg: string;
  notes: string[];
}

/** fig1 marker-curve disagreement above tolerance. */
export class GapError extends Error {}

/** CSV parsed fine but lacks the rows a preset needs. */
export class PresetDataError extends Error {}

export const GAP_TOLERANCE = 1e-7;

const SPECTRAL_METHOD = "gegenbauer";
const FIG2_METHODS = [
  "method1",
  "method2",
  "method3",
  "galerkin",
  "volterra",
  "gegenbauer",
];
const FIG3_METHODS = ["gegenbauer", "asymptotic"];

function requireMethods(
  rows: BenchRow[],
  needed: readonly string[],
  preset: PresetName,
): void {
  const present = new Set(rows.map((r) => r.method));
  for (const method of needed) {
    if (!present.has(method)) {
      throw new PresetDataError(
        `${preset} needs method "${method}" but the CSV has no rows for it ` +
          `(present: ${methodsPresent(rows).join(", ") || "none"})`,
      );
    }
  }
}

function byAlpha(rows: BenchRow[]): BenchRow[] {
  return [...rows].sort((a, b) => a.alpha - b.alpha);
}

function alphaDomain(rows: BenchRow[]): [number, number] {
  const alphas = rows.map((r) => r.alpha);
  const lo = Math.min(...alphas);
  const hi = Math.max(...alphas);
  const pad = (hi - lo || 1) * 0.03;
  return [lo - pad, hi + pad];
}

function positiveRange(values: number[]): [number, number] {
  const finite = values.filter((v) => Number.isFinite(v) && v > 0);
  if (finite.length === 0) return [1e-16, 1];
  return [Math.min(...finite) * 0.5, Math.max(...finite) * 2];
}

function sci(v: number): string {
  return v.toExponential(2);
}

// ---------------------------------------------------------------------------
// fig1: verification overlay
// ---------------------------------------------------------------------------

export function renderFig1(rows: BenchRow[]): RenderResult {
  requireMethods(rows, [SPECTRAL_METHOD], "fig1");
  const curve = rows.filter((r) => r.method === SPECTRAL_METHOD);

  // Gap check comes first: the figure is only honest if the open circles
  // genuinely sit on the curves, so a bad gap must abort before drawing.
  let gap = 0;
  for (const r of curve) {
    if (!Number.isFinite(r.absError)) {
      throw new GapError(
        `fig1 gap check: non-finite value/reference at N=${r.n} ` +
          `alpha=${r.alpha}`,
      );
    }
    if (r.absError > gap) gap = r.absError;
  }
  if (gap >= GAP_TOLERANCE) {
    throw new GapError(
      `fig1 marker-curve gap ${sci(gap)} exceeds tolerance ` +
        `${sci(GAP_TOLERANCE)}`,
    );
  }

  const byN = groupBy(curve, (r) => r.n);
  const nValues = [...byN.keys()].sort((a, b) => a - b);
  const [aLo, aHi] = alphaDomain(curve);
  const ys = curve.flatMap((r) => [r.value, r.reference]);
  const yLo = Math.min(...ys);
  const yHi = Math.max(...ys);
  const yPad = (yHi - yLo || 1) * 0.05;

  const frame: PanelFrame = {
    x: 70,
    y: 40,
    width: 560,
    height: 380,
    xScale: linearScale(aLo, aHi, 70, 630),
    yScale: linearScale(yLo - yPad, yHi + yPad, 420, 40),
  };

  const parts: string[] = [];
  parts.push(
    axes(frame, "alpha", "I(N, alpha)", "Integral vs alpha: curves and reference points"),
  );
  nValues.forEach((n, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const pts = byAlpha(byN.get(n)!);
    parts.push(
      polyline(frame, pts.map((r): Point => ({ x: r.alpha, y: r.value })), color),
    );
    parts.push(
      markers(frame, pts.map((r): Point => ({ x: r.alpha, y: r.reference })), color),
    );
  });
  parts.push(
    legend(660, 60, [
      ...nValues.map((n, i) => ({
        label: `N = ${n}`,
        color: PALETTE[i % PALETTE.length]!,
      })),
      { label: "reference", color: "#333", marker: true },
    ]),
  );

  return {
    svg: svgDocument(840, 480, parts.join("\n")),
    notes: [
      `max marker-curve gap ${sci(gap)} (tolerance ${sci(GAP_TOLERANCE)})`,
      `${nValues.length} N values, ${curve.length} rows`,
    ],
  };
}

// ---------------------------------------------------------------------------
// fig2: error and timing panels
// ---------------------------------------------------------------------------

export function renderFig2(rows: BenchRow[], logErrorAxis = true): RenderResult {
  requireMethods(rows, FIG2_METHODS, "fig2");
  const [aLo, aHi] = alphaDomain(rows);

  const notes: string[] = [];
  const flagged = new Set<string>();
  for (const method of FIG2_METHODS) {
    const mine = rows.filter((r) => r.method === method);
    const errs = mine.map((r) => r.absError).filter((e) => Number.isFinite(e));
    const maxErr = errs.length > 0 ? Math.max(...errs) : Number.NaN;
    const failed = mine.some((r) => !Number.isFinite(r.value));
    if (failed || !(maxErr <= 1.0)) {
      flagged.add(method);
      notes.push(`${method} diverged (max abs_error ${sci(maxErr)})`);
    } else {
      notes.push(`${method} max abs_error ${sci(maxErr)}`);
    }
  }

  const xScaleTop = linearScale(aLo, aHi, 70, 630);
  const errRange = positiveRange(rows.map((r) => r.absError));
  const errScale = logErrorAxis
    ? logScale(errRange[0], errRange[1], 300, 40)
    : linearScale(0, errRange[1], 300, 40);
  const secRange = positiveRange(rows.map((r) => r.seconds));
  const secScale = logScale(secRange[0], secRange[1], 620, 360);

  const top: PanelFrame = {
    x: 70,
    y: 40,
    width: 560,
    height: 260,
    xScale: xScaleTop,
    yScale: errScale,
  };
  const bottom: PanelFrame = {
    x: 70,
    y: 360,
    width: 560,
    height: 260,
    xScale: xScaleTop,
    yScale: secScale,
  };

  const nValues = [...new Set(rows.map((r) => r.n))];
  const title =
    nValues.length === 1
      ? `Per-method error and runtime at N = ${nValues[0]}`
      : "Per-method error and runtime";

  const parts: string[] = [];
  parts.push(axes(top, "alpha", "abs_error", title));
  parts.push(axes(bottom, "alpha", "seconds"));
  FIG2_METHODS.forEach((method, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const pts = byAlpha(rows.filter((r) => r.method === method));
    parts.push(
      polyline(top, pts.map((r): Point => ({ x: r.alpha, y: r.absError })), color),
    );
    parts.push(
      polyline(bottom, pts.map((r): Point => ({ x: r.alpha, y: r.seconds })), color),
    );
  });
  parts.push(
    legend(
      660,
      60,
      FIG2_METHODS.map((method, i) => ({
        label: flagged.has(method) ? `${method} (diverged)` : method,
        color: PALETTE[i % PALETTE.length]!,
      })),
    ),
  );

  return { svg: svgDocument(840, 700, parts.join("\n")), notes };
}

// ---------------------------------------------------------------------------
// fig3: asymptotic convergence
// ---------------------------------------------------------------------------

export function renderFig3(rows: BenchRow[]): RenderResult {
  requireMethods(rows, FIG3_METHODS, "fig3");
  const [aLo, aHi] = alphaDomain(rows);
  const nValues = [...new Set(rows.map((r) => r.n))].sort((a, b) => a - b);

  const mainY = positiveRange(rows.map((r) => r.value));
  const main: PanelFrame = {
    x: 70,
    y: 40,
    width: 560,
    height: 400,
    xScale: linearScale(aLo, aHi, 70, 630),
    yScale: logScale(mainY[0], mainY[1], 440, 40),
  };

  // The deviation of the asymptote from its spectral reference is exactly
  // the asymptotic rows' abs_error / |reference|; nothing is recomputed.
  const asymptRows = rows.filter((r) => r.method === "asymptotic");
  const devPoint = (r: BenchRow): Point => ({
    x: r.alpha,
    y: r.absError / Math.abs(r.reference),
  });
  const devRange = positiveRange(asymptRows.map((r) => devPoint(r).y));
  const inset: PanelFrame = {
    x: 240,
    y: 70,
    width: 240,
    height: 130,
    xScale: linearScale(aLo, aHi, 240, 480),
    yScale: logScale(devRange[0], devRange[1], 200, 70),
  };

  const notes: string[] = [];
  const parts: string[] = [];
  parts.push(
    axes(main, "alpha", "I(N, alpha)", "Spectral value (solid) vs asymptote (dashed)"),
  );
  parts.push(
    `<rect x="${inset.x - 58}" y="${inset.y - 26}" width="${inset.width + 78}" ` +
      `height="${inset.height + 66}" fill="#ffffff" stroke="none"/>`,
  );
  parts.push(axes(inset, "alpha", "relative deviation"));
  nValues.forEach((n, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const spectral = byAlpha(
      rows.filter((r) => r.n === n && r.method === SPECTRAL_METHOD),
    );
    const asympt = byAlpha(asymptRows.filter((r) => r.n === n));
    parts.push(
      polyline(main, spectral.map((r): Point => ({ x: r.alpha, y: r.value })), color),
    );
    parts.push(
      polyline(
        main,
        asympt.map((r): Point => ({ x: r.alpha, y: r.value })),
        color,
        1.2,
        "5,3",
      ),
    );
    const dev = asympt.map(devPoint);
    parts.push(polyline(inset, dev, color, 1));
    const finite = dev.map((p) => p.y).filter((v) => Number.isFinite(v));
    notes.push(`N=${n} max relative deviation ${sci(Math.max(...finite))}`);
  });
  parts.push(
    legend(
      660,
      60,
      nValues.map((n, i) => ({
        label: `N = ${n}`,
        color: PALETTE[i % PALETTE.length]!,
      })),
    ),
  );

  return { svg: svgDocument(840, 500, parts.join("\n")), notes };
}

// ---------------------------------------------------------------------------

export function renderPreset(
  preset: PresetName,
  csvText: string,
  logErrorAxis = true,
): RenderResult {
  const rows = parseBenchCsv(csvText);
  switch (preset) {
    case "fig1":
      return renderFig1(rows);
    case "fig2":
      return renderFig2(rows, logErrorAxis);
    case "fig3":
      return renderFig3(rows);
    default: {
      const never: never = preset;
      throw new PresetDataError(`unknown preset "${never}"`);
    }
  }
}

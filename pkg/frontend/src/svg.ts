/**
 * Minimal SVG chart primitives: linear and log10 scales, tick generation,
 * axis frames, polylines with pen-up breaks, and open-circle markers.
 * Everything is assembled as plain strings; there is no DOM.
 */

export function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface Point {
  x: number;
  y: number;
}

export interface Scale {
  (v: number): number;
  /** Domain values a point must satisfy to be drawable. */
  accepts(v: number): boolean;
  ticks(): number[];
  format(v: number): string;
}

// ---------------------------------------------------------------------------
// Scales
// ---------------------------------------------------------------------------

function niceStep(rough: number): number {
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= rough) return m * mag;
  }
  return 10 * mag;
}

export function linearScale(
  lo: number,
  hi: number,
  pixLo: number,
  pixHi: number,
): Scale {
  const span = hi - lo || 1;
  const scale = ((v: number) =>
    pixLo + ((v - lo) / span) * (pixHi - pixLo)) as Scale;
  scale.accepts = (v) => Number.isFinite(v);
  scale.ticks = () => {
    const step = niceStep(span / 5);
    const ticks: number[] = [];
    for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
      // -0 renders as "-0" in labels
      ticks.push(v === 0 ? 0 : v);
    }
    return ticks;
  };
  scale.format = (v) => {
    const a = Math.abs(v);
    if (v === 0) return "0";
    if (a >= 1e4 || a < 1e-3) return v.toExponential(1).replace("e+", "e");
    return String(Number(v.toPrecision(6)));
  };
  return scale;
}

/** Log10 scale over positive values; lo/hi are raw (not yet logged). */
export function logScale(
  lo: number,
  hi: number,
  pixLo: number,
  pixHi: number,
): Scale {
  if (!(lo > 0) || !(hi > 0)) {
    throw new Error(`log scale domain must be positive, got [${lo}, ${hi}]`);
  }
  const llo = Math.log10(lo);
  const lhi = Math.log10(hi);
  const span = lhi - llo || 1;
  const scale = ((v: number) =>
    pixLo + ((Math.log10(v) - llo) / span) * (pixHi - pixLo)) as Scale;
  scale.accepts = (v) => Number.isFinite(v) && v > 0;
  scale.ticks = () => {
    // One tick every k decades so that at most ~9 labels appear.
    const first = Math.ceil(llo);
    const last = Math.floor(lhi);
    const k = Math.max(1, Math.ceil((last - first) / 8));
    const ticks: number[] = [];
    for (let e = first; e <= last; e += k) ticks.push(Math.pow(10, e));
    if (ticks.length === 0) ticks.push(Math.pow(10, first));
    return ticks;
  };
  scale.format = (v) => {
    const e = Math.round(Math.log10(v));
    return `1e${e}`;
  };
  return scale;
}

// ---------------------------------------------------------------------------
// Drawing
// ---------------------------------------------------------------------------

export interface PanelFrame {
  x: number;
  y: number;
  width: number;
  height: number;
  xScale: Scale;
  yScale: Scale;
}

export function axes(
  frame: PanelFrame,
  xLabel: string,
  yLabel: string,
  title = "",
): string {
  const { x, y, width, height, xScale, yScale } = frame;
  const parts: string[] = [];
  parts.push(
    `<rect x="${x}" y="${y}" width="${width}" height="${height}" ` +
      `fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const t of xScale.ticks()) {
    const px = xScale(t);
    if (px < x - 0.5 || px > x + width + 0.5) continue;
    parts.push(
      `<line x1="${fmt(px)}" y1="${y + height}" x2="${fmt(px)}" ` +
        `y2="${y + height + 4}" stroke="#333"/>`,
      `<text x="${fmt(px)}" y="${y + height + 16}" font-size="10" ` +
        `text-anchor="middle" fill="#333">${esc(xScale.format(t))}</text>`,
    );
  }
  for (const t of yScale.ticks()) {
    const py = yScale(t);
    if (py < y - 0.5 || py > y + height + 0.5) continue;
    parts.push(
      `<line x1="${x - 4}" y1="${fmt(py)}" x2="${x}" y2="${fmt(py)}" stroke="#333"/>`,
      `<text x="${x - 7}" y="${fmt(py + 3)}" font-size="10" ` +
        `text-anchor="end" fill="#333">${esc(yScale.format(t))}</text>`,
    );
  }
  parts.push(
    `<text x="${x + width / 2}" y="${y + height + 32}" font-size="11" ` +
      `text-anchor="middle" fill="#111">${esc(xLabel)}</text>`,
    `<text x="${x - 48}" y="${y + height / 2}" font-size="11" ` +
      `text-anchor="middle" fill="#111" ` +
      `transform="rotate(-90 ${x - 48} ${y + height / 2})">${esc(yLabel)}</text>`,
  );
  if (title) {
    parts.push(
      `<text x="${x + width / 2}" y="${y - 8}" font-size="12" ` +
        `text-anchor="middle" fill="#111">${esc(title)}</text>`,
    );
  }
  return parts.join("\n");
}

function fmt(v: number): string {
  return Number(v.toFixed(2)).toString();
}

/**
 * Polyline with pen-up breaks: points the scales reject (NaN, or
 * non-positive on a log axis) split the line into separate runs.
 * Single-point runs would be invisible as strokes, so they get a dot.
 */
export function polyline(
  frame: PanelFrame,
  points: Point[],
  color: string,
  width = 1.2,
  dash = "",
): string {
  const { xScale, yScale } = frame;
  const parts: string[] = [];
  let run: Point[] = [];
  const flush = () => {
    if (run.length === 0) return;
    if (run.length === 1) {
      const p = run[0]!;
      parts.push(
        `<circle cx="${fmt(xScale(p.x))}" cy="${fmt(yScale(p.y))}" r="2" ` +
          `fill="${color}"/>`,
      );
    } else {
      const d = run
        .map(
          (p, i) =>
            `${i === 0 ? "M" : "L"}${fmt(xScale(p.x))} ${fmt(yScale(p.y))}`,
        )
        .join(" ");
      const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
      parts.push(
        `<path d="${d}" fill="none" stroke="${color}" ` +
          `stroke-width="${width}"${dashAttr}/>`,
      );
    }
    run = [];
  };
  for (const p of points) {
    if (xScale.accepts(p.x) && yScale.accepts(p.y)) {
      run.push(p);
    } else {
      flush();
    }
  }
  flush();
  return parts.join("\n");
}

/** Open circles, used for reference points laid over a computed curve. */
export function markers(
  frame: PanelFrame,
  points: Point[],
  color: string,
  radius = 3,
): string {
  const { xScale, yScale } = frame;
  return points
    .filter((p) => xScale.accepts(p.x) && yScale.accepts(p.y))
    .map(
      (p) =>
        `<circle cx="${fmt(xScale(p.x))}" cy="${fmt(yScale(p.y))}" ` +
        `r="${radius}" fill="none" stroke="${color}" stroke-width="1.2"/>`,
    )
    .join("\n");
}

export interface LegendEntry {
  label: string;
  color: string;
  marker?: boolean;
}

export function legend(x: number, y: number, entries: LegendEntry[]): string {
  const parts: string[] = [];
  entries.forEach((e, i) => {
    const ey = y + i * 14;
    if (e.marker) {
      parts.push(
        `<circle cx="${x + 9}" cy="${ey}" r="3" fill="none" ` +
          `stroke="${e.color}" stroke-width="1.2"/>`,
      );
    } else {
      parts.push(
        `<line x1="${x}" y1="${ey}" x2="${x + 18}" y2="${ey}" ` +
          `stroke="${e.color}" stroke-width="1.5"/>`,
      );
    }
    parts.push(
      `<text x="${x + 24}" y="${ey + 3.5}" font-size="10" ` +
        `fill="#111">${esc(e.label)}</text>`,
    );
  });
  return parts.join("\n");
}

export function document(
  width: number,
  height: number,
  body: string,
): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}">\n` +
    `<rect width="${width}" height="${height}" fill="#ffffff"/>\n` +
    `${body}\n</svg>\n`
  );
}

export const PALETTE = [
  "#4361ee",
  "#e63946",
  "#2d6a4f",
  "#f4a261",
  "#7209b7",
  "#0096c7",
  "#6c757d",
];

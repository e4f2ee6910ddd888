/** Minimal hand-rolled SVG building: scales, axes, markers, legends. */

export interface Margins {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const DEFAULT_MARGINS: Margins = { top: 40, right: 30, bottom: 48, left: 64 };

export const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22",
];

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export class LinearScale {
  constructor(
    private d0: number,
    private d1: number,
    private r0: number,
    private r1: number,
  ) {
    if (d1 === d0) {
      this.d1 = d0 + 1;
    }
  }

  map(v: number): number {
    return this.r0 + ((v - this.d0) / (this.d1 - this.d0)) * (this.r1 - this.r0);
  }

  ticks(count = 6): number[] {
    const span = this.d1 - this.d0;
    const step = niceStep(span / Math.max(1, count));
    const out: number[] = [];
    for (let v = Math.ceil(this.d0 / step) * step; v <= this.d1 + 1e-12; v += step) {
      out.push(Number(v.toPrecision(12)));
    }
    return out;
  }
}

function niceStep(raw: number): number {
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  if (norm <= 1) return mag;
  if (norm <= 2) return 2 * mag;
  if (norm <= 5) return 5 * mag;
  return 10 * mag;
}

export class LogScale {
  constructor(
    private d0: number,
    private d1: number,
    private r0: number,
    private r1: number,
  ) {
    if (d0 <= 0 || d1 <= 0) throw new Error("log scale requires positive domain");
    if (d1 === d0) this.d1 = d0 * 10;
  }

  map(v: number): number {
    const t = (Math.log10(v) - Math.log10(this.d0)) / (Math.log10(this.d1) - Math.log10(this.d0));
    return this.r0 + t * (this.r1 - this.r0);
  }

  /** Powers of ten covering the domain. */
  ticks(): number[] {
    const lo = Math.floor(Math.log10(this.d0));
    const hi = Math.ceil(Math.log10(this.d1));
    const out: number[] = [];
    for (let e = lo; e <= hi; e++) out.push(Math.pow(10, e));
    return out;
  }
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const e = Math.log10(Math.abs(v));
  if (Number.isInteger(e) && (e < -2 || e > 3)) return `1e${e}`;
  if (Math.abs(v) < 0.01 || Math.abs(v) >= 10000) return v.toExponential(0);
  return `${Number(v.toPrecision(6))}`;
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="12">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}

export function polyline(points: [number, number][], stroke: string, opts = ""): string {
  const pts = points.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
  return `<polyline points="${pts}" fill="none" stroke="${stroke}" ${opts}/>`;
}

export function polygon(points: [number, number][], fill: string, opts = ""): string {
  const pts = points.map(([x, y]) => `${x.toFixed(2)},${y.toFixed(2)}`).join(" ");
  return `<polygon points="${pts}" fill="${fill}" stroke="none" ${opts}/>`;
}

export function circle(x: number, y: number, r: number, fill: string): string {
  return `<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="${r}" fill="${fill}"/>`;
}

export function cross(x: number, y: number, r: number, stroke: string): string {
  return (
    `<path d="M ${(x - r).toFixed(2)} ${(y - r).toFixed(2)} L ${(x + r).toFixed(2)} ${(y + r).toFixed(2)} ` +
    `M ${(x - r).toFixed(2)} ${(y + r).toFixed(2)} L ${(x + r).toFixed(2)} ${(y - r).toFixed(2)}" ` +
    `stroke="${stroke}" stroke-width="1.5" fill="none"/>`
  );
}

export function line(x1: number, y1: number, x2: number, y2: number, stroke: string, opts = ""): string {
  return (
    `<line x1="${x1.toFixed(2)}" y1="${y1.toFixed(2)}" x2="${x2.toFixed(2)}" y2="${y2.toFixed(2)}" ` +
    `stroke="${stroke}" ${opts}/>`
  );
}

export function text(x: number, y: number, content: string, opts = ""): string {
  return `<text x="${x.toFixed(2)}" y="${y.toFixed(2)}" ${opts}>${escapeXml(content)}</text>`;
}

export interface Frame {
  width: number;
  height: number;
  margins: Margins;
  x0: number;
  x1: number;
  y0: number;
  y1: number;
}

export function makeFrame(width: number, height: number, margins = DEFAULT_MARGINS): Frame {
  return {
    width,
    height,
    margins,
    x0: margins.left,
    x1: width - margins.right,
    y0: height - margins.bottom,
    y1: margins.top,
  };
}

export function axes(
  frame: Frame,
  xScale: LinearScale,
  yScale: LogScale,
  xLabel: string,
  yLabel: string,
  title: string,
): string {
  const parts: string[] = [];
  parts.push(line(frame.x0, frame.y0, frame.x1, frame.y0, "#000"));
  parts.push(line(frame.x0, frame.y0, frame.x0, frame.y1, "#000"));
  for (const v of xScale.ticks()) {
    const x = xScale.map(v);
    if (x < frame.x0 - 0.5 || x > frame.x1 + 0.5) continue;
    parts.push(line(x, frame.y0, x, frame.y0 + 5, "#000"));
    parts.push(text(x, frame.y0 + 18, formatTick(v), 'text-anchor="middle"'));
  }
  for (const v of yScale.ticks()) {
    const y = yScale.map(v);
    if (y > frame.y0 + 0.5 || y < frame.y1 - 0.5) continue;
    parts.push(line(frame.x0 - 5, y, frame.x0, y, "#000"));
    parts.push(line(frame.x0, y, frame.x1, y, "#ddd", 'stroke-dasharray="2,4"'));
    parts.push(text(frame.x0 - 8, y + 4, formatTick(v), 'text-anchor="end"'));
  }
  parts.push(text((frame.x0 + frame.x1) / 2, frame.height - 10, xLabel, 'text-anchor="middle"'));
  parts.push(
    `<text x="16" y="${(frame.y0 + frame.y1) / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${(frame.y0 + frame.y1) / 2})">${escapeXml(yLabel)}</text>`,
  );
  parts.push(text((frame.x0 + frame.x1) / 2, 20, title, 'text-anchor="middle" font-size="14"'));
  return parts.join("\n");
}

export function legend(frame: Frame, entries: { label: string; color: string; marker: "dot" | "x" }[]): string {
  const parts: string[] = [];
  entries.forEach((e, i) => {
    const y = frame.y1 + 14 + i * 16;
    const x = frame.x1 - 150;
    parts.push(e.marker === "dot" ? circle(x, y - 4, 3.5, e.color) : cross(x, y - 4, 3.5, e.color));
    parts.push(text(x + 8, y, e.label));
  });
  return parts.join("\n");
}

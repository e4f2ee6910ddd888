/** Semilog plot of error per round vs code distance with suppression fits.
 *
 * One series per (p_mask, schedule, p_phys) family from the fits CSV's
 * eps rows; the family's lambda row supplies the regression line
 * eps = C / Lambda^((d+1)/2) and its standard-error band.
 */

import { FitsRow, SchemaError } from "./csv.js";
import {
  LinearScale,
  LogScale,
  PALETTE,
  axes,
  circle,
  cross,
  legend,
  line,
  makeFrame,
  polygon,
  polyline,
  svgDocument,
} from "./svg.js";
import { PlotResult } from "./roundsCurve.js";

interface Family {
  key: string;
  label: string;
  eps: FitsRow[];
  lambda: FitsRow | null;
}

function familyKey(row: FitsRow): string {
  return `${row.p_phys}|${row.p_mask}|${row.schedule}`;
}

function buildFamilies(rows: FitsRow[]): { families: Family[]; warnings: string[] } {
  const warnings: string[] = [];
  const eps = rows.filter((r) => r.row_type === "eps");
  const lambdas = new Map(rows.filter((r) => r.row_type === "lambda").map((r) => [familyKey(r), r]));
  const byKey = new Map<string, FitsRow[]>();
  for (const row of eps) {
    const bucket = byKey.get(familyKey(row)) ?? [];
    bucket.push(row);
    byKey.set(familyKey(row), bucket);
  }
  const families: Family[] = [];
  for (const [key, bucket] of [...byKey.entries()].sort(([a], [b]) => (a < b ? -1 : 1))) {
    const withD = bucket.filter((r) => r.d !== null && r.eps_L !== null && r.eps_L > 0);
    const distances = new Set(withD.map((r) => r.d));
    if (distances.size < 2) {
      warnings.push(`family ${key}: fewer than 2 distances; skipped`);
      continue;
    }
    const sample = withD[0];
    families.push({
      key,
      label: `${((sample.p_mask ?? 0) * 100).toFixed(0)}% ${sample.schedule}`,
      eps: withD.sort((a, b) => (a.d as number) - (b.d as number)),
      lambda: lambdas.get(key) ?? null,
    });
  }
  return { families, warnings };
}

export function lambdaPlotSvg(rows: FitsRow[], width = 760, height = 520): PlotResult {
  if (rows.length === 0) throw new SchemaError("fits CSV contains no data rows");
  const { families, warnings } = buildFamilies(rows);
  if (families.length === 0) {
    throw new SchemaError("no family with two or more distinct distances to plot");
  }

  const allEps = families.flatMap((f) => f.eps);
  const dMin = Math.min(...allEps.map((r) => r.d as number));
  const dMax = Math.max(...allEps.map((r) => r.d as number));
  const epsVals = allEps.map((r) => r.eps_L as number);

  const frame = makeFrame(width, height);
  const xScale = new LinearScale(dMin - 1, dMax + 1, frame.x0, frame.x1);
  const yScale = new LogScale(
    Math.min(...epsVals) / 3,
    Math.max(...epsVals) * 3,
    frame.y0,
    frame.y1,
  );

  const parts: string[] = [];
  parts.push(
    axes(frame, xScale, yScale, "code distance", "error per round", "error suppression vs distance"),
  );

  const entries: { label: string; color: string; marker: "dot" | "x" }[] = [];
  families.forEach((family, fi) => {
    const color = PALETTE[fi % PALETTE.length];
    const marker = family.eps[0].schedule === "iterative" ? "x" : "dot";

    if (family.lambda?.lambda && family.lambda.C) {
      const { lambda, C, lambda_stderr, C_stderr } = family.lambda;
      const model = (d: number, c: number, lam: number) => c / Math.pow(lam, (d + 1) / 2);
      const pts: [number, number][] = [];
      const hi: [number, number][] = [];
      const lo: [number, number][] = [];
      for (let i = 0; i <= 60; i++) {
        const d = dMin - 0.5 + (dMax - dMin + 1) * (i / 60);
        pts.push([xScale.map(d), yScale.map(clampPos(model(d, C, lambda)))]);
        if (lambda_stderr !== null && C_stderr !== null) {
          hi.push([xScale.map(d), yScale.map(clampPos(model(d, C + C_stderr, Math.max(lambda - lambda_stderr, 1e-6))))]);
          lo.push([xScale.map(d), yScale.map(clampPos(model(d, Math.max(C - C_stderr, 1e-12), lambda + lambda_stderr)))]);
        }
      }
      if (hi.length && lo.length) {
        parts.push(polygon([...hi, ...lo.reverse()], color, 'opacity="0.12"'));
      }
      parts.push(polyline(pts, color, 'stroke-width="1.2"'));
      entries.push({
        label: `${family.label} (Λ=${lambda.toFixed(2)})`,
        color,
        marker,
      });
    } else {
      warnings.push(`family ${family.key}: no lambda row; line omitted`);
      entries.push({ label: family.label, color, marker });
    }

    for (const row of family.eps) {
      const x = xScale.map(row.d as number);
      const y = yScale.map(row.eps_L as number);
      if (row.eps_stderr && row.eps_stderr > 0) {
        const lo = Math.max((row.eps_L as number) - row.eps_stderr, 1e-12);
        const hi = (row.eps_L as number) + row.eps_stderr;
        parts.push(line(x, yScale.map(lo), x, yScale.map(hi), color, 'stroke-width="1"'));
      }
      parts.push(marker === "dot" ? circle(x, y, 3.5, color) : cross(x, y, 3.5, color));
    }
  });
  parts.push(legend(frame, entries));

  return { svg: svgDocument(width, height, parts.join("\n")), warnings };
}

function clampPos(v: number): number {
  return Math.max(v, 1e-12);
}

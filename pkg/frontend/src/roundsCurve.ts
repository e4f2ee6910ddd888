/** Semilog plot of logical error rate vs error-correction rounds.
 *
 * One series per (code, p_mask, schedule, p_phys) group: scatter with
 * binomial error bars, plus the fitted curve 1-(1-eps_L)^t overlaid for
 * groups that have a matching eps row in the fits CSV.
 */

import { CampaignRow, FitsRow, SchemaError } from "./csv.js";
import {
  Frame,
  LinearScale,
  LogScale,
  PALETTE,
  axes,
  circle,
  cross,
  legend,
  line,
  makeFrame,
  polyline,
  svgDocument,
} from "./svg.js";

export interface PlotResult {
  svg: string;
  warnings: string[];
}

interface Group {
  key: string;
  label: string;
  rows: CampaignRow[];
  eps: FitsRow | null;
}

function groupKey(codeId: string, pPhys: number, pMask: number, schedule: string): string {
  return `${codeId}|${pPhys}|${pMask}|${schedule}`;
}

function buildGroups(rows: CampaignRow[], fits: FitsRow[] | null): Group[] {
  const byKey = new Map<string, CampaignRow[]>();
  for (const row of rows) {
    const key = groupKey(row.code_id, row.p_phys, row.p_mask, row.schedule);
    const bucket = byKey.get(key) ?? [];
    bucket.push(row);
    byKey.set(key, bucket);
  }
  const epsByKey = new Map<string, FitsRow>();
  for (const f of fits ?? []) {
    if (f.row_type === "eps" && f.code_id !== null && f.p_phys !== null && f.p_mask !== null && f.schedule !== null) {
      epsByKey.set(groupKey(f.code_id, f.p_phys, f.p_mask, f.schedule), f);
    }
  }
  return [...byKey.entries()]
    .sort(([a], [b]) => (a < b ? -1 : 1))
    .map(([key, groupRows]) => {
      const r = groupRows[0];
      return {
        key,
        label: `${r.code_id} ${(r.p_mask * 100).toFixed(0)}% ${r.schedule}`,
        rows: groupRows.sort((x, y) => x.tau - y.tau),
        eps: epsByKey.get(key) ?? null,
      };
    });
}

export function roundsCurveSvg(
  campaign: CampaignRow[],
  fits: FitsRow[] | null,
  width = 760,
  height = 520,
): PlotResult {
  if (campaign.length === 0) throw new SchemaError("campaign CSV contains no data rows");
  const warnings: string[] = [];
  const groups = buildGroups(campaign, fits);

  const positive = campaign.filter((r) => r.p_log > 0);
  if (positive.length === 0) throw new SchemaError("no rows with p_log > 0 to plot on a log axis");
  const skipped = campaign.length - positive.length;
  if (skipped > 0) warnings.push(`${skipped} zero-failure point(s) omitted from the log axis`);

  const taus = campaign.map((r) => r.tau);
  const frame = makeFrame(width, height);
  const xScale = new LinearScale(0, Math.max(...taus) * 1.05, frame.x0, frame.x1);
  const yMin = Math.min(...positive.map((r) => Math.max(r.p_log - r.stderr, r.p_log / 3)));
  const yMax = Math.min(1, Math.max(...positive.map((r) => r.p_log + r.stderr)) * 1.3);
  const yScale = new LogScale(Math.max(yMin, 1e-6), Math.max(yMax, 2 * yMin), frame.y0, frame.y1);

  const parts: string[] = [];
  parts.push(axes(frame, xScale, yScale, "rounds", "logical error rate", "logical error rate vs rounds"));

  const entries: { label: string; color: string; marker: "dot" | "x" }[] = [];
  groups.forEach((group, gi) => {
    const color = PALETTE[gi % PALETTE.length];
    const marker = group.rows[0].schedule === "iterative" ? "x" : "dot";
    entries.push({ label: group.label, color, marker });
    for (const row of group.rows) {
      if (row.p_log <= 0) continue;
      const x = xScale.map(row.tau);
      const y = yScale.map(row.p_log);
      const lo = Math.max(row.p_log - row.stderr, 1e-9);
      const hi = Math.min(row.p_log + row.stderr, 1);
      if (row.stderr > 0) {
        parts.push(line(x, yScale.map(lo), x, yScale.map(hi), color, 'stroke-width="1"'));
      }
      parts.push(marker === "dot" ? circle(x, y, 3.5, color) : cross(x, y, 3.5, color));
    }
    if (group.eps?.eps_L && group.eps.eps_L > 0 && group.eps.eps_L < 1) {
      const eps = group.eps.eps_L;
      const tMax = Math.max(...group.rows.map((r) => r.tau));
      const pts: [number, number][] = [];
      for (let i = 0; i <= 100; i++) {
        const t = (1 + (tMax - 1) * (i / 100));
        const p = 1 - Math.pow(1 - eps, t);
        if (p > 0) pts.push([xScale.map(t), yScale.map(Math.min(p, 1))]);
      }
      parts.push(polyline(pts, color, 'stroke-width="1.2" stroke-dasharray="5,3"'));
    } else {
      warnings.push(`no usable eps fit for group ${group.label}; curve omitted`);
    }
  });
  parts.push(legend(frame, entries));

  return { svg: svgDocument(width, height, parts.join("\n")), warnings };
}

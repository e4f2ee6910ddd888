/** Plot CLI: reads simulator CSVs, writes an SVG figure.
 *
 *   node dist/cli.js --kind rounds-curve --input campaign.csv [--fits fits.csv] --output out.svg
 *   node dist/cli.js --kind lambda-plot --input fits.csv --output out.svg
 *
 * Exits 1 on schema violations or bad arguments; warnings go to stderr.
 */

import { readFileSync, writeFileSync } from "node:fs";
import process from "node:process";

import { parseCampaignCsv, parseFitsCsv, SchemaError } from "./csv.js";
import { lambdaPlotSvg } from "./lambdaPlot.js";
import { roundsCurveSvg, PlotResult } from "./roundsCurve.js";

interface Args {
  kind: string;
  input: string;
  fits: string | null;
  output: string;
  width: number;
  height: number;
}

function parseArgs(argv: string[]): Args {
  const args: Args = { kind: "", input: "", fits: null, output: "", width: 760, height: 520 };
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const next = () => {
      if (i + 1 >= argv.length) throw new Error(`missing value for ${flag}`);
      return argv[++i];
    };
    switch (flag) {
      case "--kind":
        args.kind = next();
        break;
      case "--input":
        args.input = next();
        break;
      case "--fits":
        args.fits = next();
        break;
      case "--output":
        args.output = next();
        break;
      case "--width":
        args.width = Number(next());
        break;
      case "--height":
        args.height = Number(next());
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  if (!args.kind || !args.input || !args.output) {
    throw new Error("required flags: --kind {rounds-curve|lambda-plot} --input CSV --output SVG");
  }
  return args;
}

export function render(args: Args): PlotResult {
  if (args.kind === "rounds-curve") {
    const campaign = parseCampaignCsv(readFileSync(args.input, "utf-8"));
    const fits = args.fits ? parseFitsCsv(readFileSync(args.fits, "utf-8")) : null;
    return roundsCurveSvg(campaign, fits, args.width, args.height);
  }
  if (args.kind === "lambda-plot") {
    const fits = parseFitsCsv(readFileSync(args.input, "utf-8"));
    return lambdaPlotSvg(fits, args.width, args.height);
  }
  throw new Error(`unknown plot kind ${JSON.stringify(args.kind)}; expected rounds-curve or lambda-plot`);
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  try {
    const { svg, warnings } = render(args);
    for (const w of warnings) console.error(`warning: ${w}`);
    writeFileSync(args.output, svg);
    console.error(`wrote ${args.output}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 1;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}

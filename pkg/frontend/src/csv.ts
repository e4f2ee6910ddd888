/** Strict readers for the campaign and fits CSV schemas.
 *
 * Columns and their order are a stable contract with the simulator; any
 * mismatch throws a SchemaError naming the offending column or line so
 * schema drift breaks loudly, never silently.
 */

export class SchemaError extends Error {}

export const CAMPAIGN_COLUMNS = [
  "code_id", "n_qubits", "k", "d", "p_phys", "p_mask", "mask_model",
  "schedule", "tau", "trials", "failures", "p_log", "stderr", "base_seed",
] as const;

export const FITS_COLUMNS = [
  "row_type", "code_id", "d", "p_phys", "p_mask", "mask_model", "schedule",
  "eps_L", "eps_stderr", "lambda", "C", "lambda_stderr", "C_stderr",
  "n_points", "n_excluded_zero", "n_excluded_one",
] as const;

export interface CampaignRow {
  code_id: string;
  n_qubits: number;
  k: number;
  d: number | null;
  p_phys: number;
  p_mask: number;
  mask_model: string;
  schedule: string;
  tau: number;
  trials: number;
  failures: number;
  p_log: number;
  stderr: number;
  base_seed: number;
}

export interface FitsRow {
  row_type: "eps" | "lambda";
  code_id: string | null;
  d: number | null;
  p_phys: number | null;
  p_mask: number | null;
  mask_model: string | null;
  schedule: string | null;
  eps_L: number | null;
  eps_stderr: number | null;
  lambda: number | null;
  C: number | null;
  lambda_stderr: number | null;
  C_stderr: number | null;
  n_points: number | null;
  n_excluded_zero: number | null;
  n_excluded_one: number | null;
}

const MISSING = "-";

function splitDataLines(text: string): { line: string; lineNo: number }[] {
  const out: { line: string; lineNo: number }[] = [];
  text.split(/\r?\n/).forEach((raw, idx) => {
    const line = raw.trim();
    if (line.length === 0 || line.startsWith("#")) return;
    out.push({ line, lineNo: idx + 1 });
  });
  return out;
}

function checkHeader(fields: string[], expected: readonly string[], lineNo: number): void {
  for (let i = 0; i < Math.max(fields.length, expected.length); i++) {
    if (fields[i] !== expected[i]) {
      throw new SchemaError(
        `line ${lineNo}: header column ${i + 1} is ${JSON.stringify(fields[i] ?? "")}, ` +
          `expected ${JSON.stringify(expected[i] ?? "(nothing)")}`,
      );
    }
  }
}

function numberOrNull(column: string, value: string, lineNo: number): number | null {
  if (value === MISSING) return null;
  const parsed = Number(value);
  if (!Number.isFinite(parsed)) {
    throw new SchemaError(`line ${lineNo}: bad numeric value ${JSON.stringify(value)} for column ${column}`);
  }
  return parsed;
}

function requiredNumber(column: string, value: string, lineNo: number): number {
  const parsed = numberOrNull(column, value, lineNo);
  if (parsed === null) {
    throw new SchemaError(`line ${lineNo}: column ${column} must not be missing`);
  }
  return parsed;
}

function parseRows(text: string, columns: readonly string[]): { fields: string[]; lineNo: number }[] {
  const lines = splitDataLines(text);
  if (lines.length === 0) throw new SchemaError("no header row found");
  checkHeader(lines[0].line.split(","), columns, lines[0].lineNo);
  return lines.slice(1).map(({ line, lineNo }) => {
    const fields = line.split(",");
    if (fields.length !== columns.length) {
      throw new SchemaError(`line ${lineNo}: expected ${columns.length} fields, got ${fields.length}`);
    }
    return { fields, lineNo };
  });
}

export function parseCampaignCsv(text: string): CampaignRow[] {
  return parseRows(text, CAMPAIGN_COLUMNS).map(({ fields, lineNo }) => {
    const [code_id, n_qubits, k, d, p_phys, p_mask, mask_model, schedule,
           tau, trials, failures, p_log, stderr, base_seed] = fields;
    return {
      code_id,
      n_qubits: requiredNumber("n_qubits", n_qubits, lineNo),
      k: requiredNumber("k", k, lineNo),
      d: numberOrNull("d", d, lineNo),
      p_phys: requiredNumber("p_phys", p_phys, lineNo),
      p_mask: requiredNumber("p_mask", p_mask, lineNo),
      mask_model,
      schedule,
      tau: requiredNumber("tau", tau, lineNo),
      trials: requiredNumber("trials", trials, lineNo),
      failures: requiredNumber("failures", failures, lineNo),
      p_log: requiredNumber("p_log", p_log, lineNo),
      stderr: requiredNumber("stderr", stderr, lineNo),
      base_seed: requiredNumber("base_seed", base_seed, lineNo),
    };
  });
}

export function parseFitsCsv(text: string): FitsRow[] {
  return parseRows(text, FITS_COLUMNS).map(({ fields, lineNo }) => {
    const [row_type, code_id, d, p_phys, p_mask, mask_model, schedule, eps_L,
           eps_stderr, lambda, C, lambda_stderr, C_stderr, n_points,
           n_excluded_zero, n_excluded_one] = fields;
    if (row_type !== "eps" && row_type !== "lambda") {
      throw new SchemaError(`line ${lineNo}: row_type must be eps or lambda, got ${JSON.stringify(row_type)}`);
    }
    return {
      row_type,
      code_id: code_id === MISSING ? null : code_id,
      d: numberOrNull("d", d, lineNo),
      p_phys: numberOrNull("p_phys", p_phys, lineNo),
      p_mask: numberOrNull("p_mask", p_mask, lineNo),
      mask_model: mask_model === MISSING ? null : mask_model,
      schedule: schedule === MISSING ? null : schedule,
      eps_L: numberOrNull("eps_L", eps_L, lineNo),
      eps_stderr: numberOrNull("eps_stderr", eps_stderr, lineNo),
      lambda: numberOrNull("lambda", lambda, lineNo),
      C: numberOrNull("C", C, lineNo),
      lambda_stderr: numberOrNull("lambda_stderr", lambda_stderr, lineNo),
      C_stderr: numberOrNull("C_stderr", C_stderr, lineNo),
      n_points: numberOrNull("n_points", n_points, lineNo),
      n_excluded_zero: numberOrNull("n_excluded_zero", n_excluded_zero, lineNo),
      n_excluded_one: numberOrNull("n_excluded_one", n_excluded_one, lineNo),
    };
  });
}

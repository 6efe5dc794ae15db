/**
 * Strict readers for the CSV files the locklab CLI emits.
 *
 * The formats are frozen upstream (docs/output-schema.md in the Python
 * package): UTF-8, LF, one header row, floats with six decimals, booleans
 * as true/false, comma-holding fields wrapped in double quotes.  Anything
 * that deviates raises SchemaError; the plots never guess.
 */

export class SchemaError extends Error {}

export type CellKind = "int" | "float" | "bool" | "string";

export interface ColumnSpec {
  name: string;
  kind: CellKind;
}

export const BOUNDS_COLUMNS: ColumnSpec[] = [
  { name: "m", kind: "int" },
  { name: "n", kind: "int" },
  { name: "locking_bound", kind: "float" },
  { name: "epsilon_of_n", kind: "float" },
  { name: "delta_lower", kind: "float" },
  { name: "key_entropy_bits", kind: "float" },
];

export const ATTACK_COLUMNS: ColumnSpec[] = [
  { name: "m", kind: "int" },
  { name: "trials", kind: "int" },
  { name: "successes", kind: "int" },
  { name: "success_rate", kind: "float" },
  { name: "mode", kind: "string" },
];

export const BELL_COLUMNS: ColumnSpec[] = [
  { name: "trial", kind: "int" },
  { name: "fidelity", kind: "float" },
  { name: "epsilon_bound", kind: "float" },
  { name: "measured_distance", kind: "float" },
  { name: "pass", kind: "bool" },
];

export interface BoundsRow {
  m: number;
  n: number;
  locking_bound: number;
  epsilon_of_n: number;
  delta_lower: number;
  key_entropy_bits: number;
}

export interface AttackRow {
  m: number;
  trials: number;
  successes: number;
  success_rate: number;
  mode: string;
}

export interface BellRow {
  trial: number;
  fidelity: number;
  epsilon_bound: number;
  measured_distance: number;
  pass: boolean;
}

const INT_RE = /^-?\d+$/;
const FLOAT_RE = /^-?\d+\.\d{6}$/; // upstream always prints six decimals

/** Split one CSV line, honoring double-quoted fields. */
export function splitCsvLine(line: string): string[] {
  const cells: string[] = [];
  let cur = "";
  let quoted = false;
  for (let i = 0; i < line.length; i++) {
    const ch = line[i];
    if (quoted) {
      if (ch === '"') {
        if (line[i + 1] === '"') {
          cur += '"';
          i++;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch === '"' && cur === "") {
      quoted = true;
    } else if (ch === ",") {
      cells.push(cur);
      cur = "";
    } else {
      cur += ch;
    }
  }
  if (quoted) throw new SchemaError("unterminated quoted field");
  cells.push(cur);
  return cells;
}

export function parseCsv(text: string): string[][] {
  if (text.includes("\r")) throw new SchemaError("CSV must use LF line endings");
  const lines = text.split("\n");
  if (lines[lines.length - 1] === "") lines.pop(); // trailing newline
  return lines.map(splitCsvLine);
}

function parseCell(raw: string, spec: ColumnSpec, line: number): number | string | boolean {
  switch (spec.kind) {
    case "int":
      if (!INT_RE.test(raw)) {
        throw new SchemaError(`line ${line}: column ${spec.name} wants an integer, got "${raw}"`);
      }
      return parseInt(raw, 10);
    case "float":
      if (!FLOAT_RE.test(raw)) {
        throw new SchemaError(`line ${line}: column ${spec.name} wants a 6-decimal float, got "${raw}"`);
      }
      return parseFloat(raw);
    case "bool":
      if (raw !== "true" && raw !== "false") {
        throw new SchemaError(`line ${line}: column ${spec.name} wants true/false, got "${raw}"`);
      }
      return raw === "true";
    case "string":
      if (raw === "") {
        throw new SchemaError(`line ${line}: column ${spec.name} is empty`);
      }
      return raw;
  }
}

/** Validate header and cells against a column spec; at least one data row. */
export function parseTable(text: string, columns: ColumnSpec[]): Record<string, number | string | boolean>[] {
  const rows = parseCsv(text);
  if (rows.length === 0) throw new SchemaError("CSV is empty");
  const header = rows[0]!;
  const wanted = columns.map((c) => c.name);
  if (header.length !== wanted.length || !header.every((h, i) => h === wanted[i])) {
    throw new SchemaError(
      `header mismatch: got [${header.join(",")}], want [${wanted.join(",")}]`,
    );
  }
  if (rows.length === 1) throw new SchemaError("CSV has a header but no data rows");
  const out: Record<string, number | string | boolean>[] = [];
  for (let r = 1; r < rows.length; r++) {
    const cells = rows[r]!;
    if (cells.length !== columns.length) {
      throw new SchemaError(`line ${r + 1}: expected ${columns.length} cells, got ${cells.length}`);
    }
    const rec: Record<string, number | string | boolean> = {};
    columns.forEach((spec, i) => {
      rec[spec.name] = parseCell(cells[i]!, spec, r + 1);
    });
    out.push(rec);
  }
  return out;
}

export function readBounds(text: string): BoundsRow[] {
  return parseTable(text, BOUNDS_COLUMNS) as unknown as BoundsRow[];
}

export function readAttack(text: string): AttackRow[] {
  const rows = parseTable(text, ATTACK_COLUMNS) as unknown as AttackRow[];
  for (const row of rows) {
    if (row.mode !== "header" && row.mode !== "blind") {
      throw new SchemaError(`unknown attack mode "${row.mode}"`);
    }
  }
  return rows;
}

export function readBell(text: string): BellRow[] {
  return parseTable(text, BELL_COLUMNS) as unknown as BellRow[];
}

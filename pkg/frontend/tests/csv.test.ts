import { describe, expect, it } from "vitest";
import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import {
  ATTACK_COLUMNS,
  BOUNDS_COLUMNS,
  parseCsv,
  parseTable,
  readAttack,
  readBell,
  readBounds,
  SchemaError,
  splitCsvLine,
} from "../src/csv";

const fixture = (name: string) =>
  readFileSync(fileURLToPath(new URL(`fixtures/${name}`, import.meta.url)), "utf-8");

describe("splitCsvLine", () => {
  it("splits plain fields", () => {
    expect(splitCsvLine("a,b,c")).toEqual(["a", "b", "c"]);
    expect(splitCsvLine("a,,c")).toEqual(["a", "", "c"]);
  });

  it("honors quoted fields with commas and escaped quotes", () => {
    expect(splitCsvLine('1,"x, y",2')).toEqual(["1", "x, y", "2"]);
    expect(splitCsvLine('"say ""hi""",ok')).toEqual(['say "hi"', "ok"]);
  });

  it("rejects an unterminated quote", () => {
    expect(() => splitCsvLine('"open,1')).toThrow(SchemaError);
  });
});

describe("parseCsv", () => {
  it("drops the single trailing newline", () => {
    expect(parseCsv("a,b\n1,2\n")).toEqual([["a", "b"], ["1", "2"]]);
  });

  it("rejects CRLF", () => {
    expect(() => parseCsv("a,b\r\n1,2\r\n")).toThrow(/LF/);
  });
});

describe("parseTable", () => {
  it("rejects a wrong header", () => {
    expect(() => parseTable("m,wrong\n1,2\n", BOUNDS_COLUMNS)).toThrow(/header mismatch/);
  });

  it("rejects reordered columns", () => {
    const txt = "n,m,locking_bound,epsilon_of_n,delta_lower,key_entropy_bits\n";
    expect(() => parseTable(txt + "1,2,0.500000,0.500000,1.000000,2.000000\n", BOUNDS_COLUMNS)).toThrow(
      SchemaError,
    );
  });

  it("rejects an empty file and a header-only file", () => {
    expect(() => parseTable("", BOUNDS_COLUMNS)).toThrow(SchemaError);
    expect(() => parseTable("m,trials,successes,success_rate,mode\n", ATTACK_COLUMNS)).toThrow(
      /no data rows/,
    );
  });

  it("rejects a short row", () => {
    const txt = "m,trials,successes,success_rate,mode\n1,100,50\n";
    expect(() => parseTable(txt, ATTACK_COLUMNS)).toThrow(/expected 5 cells/);
  });

  it("rejects badly typed cells", () => {
    const head = "m,trials,successes,success_rate,mode\n";
    expect(() => parseTable(head + "x,100,50,0.500000,blind\n", ATTACK_COLUMNS)).toThrow(/integer/);
    expect(() => parseTable(head + "1,100,50,0.5,blind\n", ATTACK_COLUMNS)).toThrow(/6-decimal/);
    expect(() => parseTable(head + "1,100,50,0.500000,\n", ATTACK_COLUMNS)).toThrow(/empty/);
  });
});

describe("golden fixtures", () => {
  it("reads the bounds table", () => {
    const rows = readBounds(fixture("bounds.csv"));
    expect(rows).toHaveLength(20);
    expect(rows[0]).toEqual({
      m: 1,
      n: 2,
      locking_bound: 0.816497,
      epsilon_of_n: 1.0,
      delta_lower: 1.768466,
      key_entropy_bits: 2.584963,
    });
  });

  it("reads both attack tables", () => {
    const header = readAttack(fixture("attack_header.csv"));
    expect(header.every((r) => r.mode === "header")).toBe(true);
    expect(header.every((r) => r.success_rate === 1.0)).toBe(true);
    const blind = readAttack(fixture("attack_blind.csv"));
    expect(blind.every((r) => r.mode === "blind")).toBe(true);
    expect(blind.every((r) => r.success_rate < 0.7)).toBe(true);
  });

  it("rejects an unknown attack mode", () => {
    const txt = "m,trials,successes,success_rate,mode\n1,10,10,1.000000,sneaky\n";
    expect(() => readAttack(txt)).toThrow(/unknown attack mode/);
  });

  it("reads the bell table with native booleans", () => {
    const rows = readBell(fixture("bell.csv"));
    expect(rows).toHaveLength(25);
    for (const row of rows) {
      expect(typeof row.pass).toBe("boolean");
      expect(row.measured_distance).toBeLessThanOrEqual(row.epsilon_bound + 1e-9);
    }
  });
});

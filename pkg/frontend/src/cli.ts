#!/usr/bin/env node
/**
 * locklab-plot --in FILE.csv --kind KIND --out FILE.svg
 *
 * Renders one SVG figure from a locklab CLI CSV file.  Exit codes follow
 * the producer's convention: 0 ok, 1 I/O failure, 2 usage or schema error.
 */

import fs from "node:fs";
import { pathToFileURL } from "node:url";

import { readAttack, readBell, readBounds, SchemaError } from "./csv.js";
import { PLOT_KINDS, render, type PlotKind } from "./plots.js";

const USAGE = `usage: locklab-plot --in FILE.csv --kind {${PLOT_KINDS.join("|")}} --out FILE.svg`;

interface Args {
  input: string;
  output: string;
  kind: PlotKind;
}

export function parseArgs(argv: string[]): Args {
  let input: string | undefined;
  let output: string | undefined;
  let kind: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (flag === "--in" || flag === "--kind" || flag === "--out") {
      if (value === undefined) throw new SchemaError(`${flag} needs a value`);
      if (flag === "--in") input = value;
      else if (flag === "--out") output = value;
      else kind = value;
      i++;
    } else {
      throw new SchemaError(`unknown argument ${flag}`);
    }
  }
  if (!input || !output || !kind) throw new SchemaError("need --in, --kind, and --out");
  if (!(PLOT_KINDS as string[]).includes(kind)) {
    throw new SchemaError(`unknown kind "${kind}", want one of ${PLOT_KINDS.join(", ")}`);
  }
  if (!output.endsWith(".svg")) {
    throw new SchemaError("output must be an .svg path (vector output only)");
  }
  return { input, output, kind: kind as PlotKind };
}

export function renderFile(input: string, kind: PlotKind): string {
  const textData = fs.readFileSync(input, "utf-8");
  switch (kind) {
    case "bounds_vs_m":
      return render(kind, readBounds(textData));
    case "attack_rates":
      return render(kind, readAttack(textData));
    case "bell_scatter":
      return render(kind, readBell(textData));
  }
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`locklab-plot: ${(err as Error).message}`);
    console.error(USAGE);
    return 2;
  }
  try {
    const svg = renderFile(args.input, args.kind);
    fs.writeFileSync(args.output, svg, "utf-8");
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`locklab-plot: schema mismatch: ${err.message}`);
      return 2;
    }
    console.error(`locklab-plot: ${(err as Error).message}`);
    return 1;
  }
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}

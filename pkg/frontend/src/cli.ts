#!/usr/bin/env node
/**
 * CSV-to-figure command line tool.
 *
 * Usage:
 *   sphconv-figures --preset fig1 --in bench.csv --out fig1.svg
 *
 * Exit 0 on success; exit 1 for usage errors, schema mismatches (the
 * offending column is named), missing preset data, or a failed fig1
 * marker-curve gap check.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { GapError, PresetDataError, PresetName, renderPreset } from "./figures.js";
import { SchemaError } from "./schema.js";

const USAGE =
  "usage: sphconv-figures --preset {fig1,fig2,fig3} --in <bench.csv> --out <figure.svg>";

const PRESETS: readonly PresetName[] = ["fig1", "fig2", "fig3"];

interface CliArgs {
  preset: PresetName;
  input: string;
  output: string;
}

class UsageError extends Error {}

function parseArgs(argv: string[]): CliArgs {
  let preset = "";
  let input = "";
  let output = "";
  for (let i = 0; i < argv.length; i += 1) {
    const arg = argv[i]!;
    const next = () => {
      i += 1;
      const v = argv[i];
      if (v === undefined) throw new UsageError(`${arg} needs a value`);
      return v;
    };
    if (arg === "--preset") preset = next();
    else if (arg === "--in") input = next();
    else if (arg === "--out") output = next();
    else if (arg === "--help" || arg === "-h") {
      console.log(USAGE);
      process.exit(0);
    } else throw new UsageError(`unknown argument: ${arg}`);
  }
  if (!preset || !input || !output) {
    throw new UsageError("need all of --preset, --in, --out");
  }
  if (!(PRESETS as readonly string[]).includes(preset)) {
    throw new UsageError(
      `unknown preset "${preset}" (expected one of: ${PRESETS.join(", ")})`,
    );
  }
  return { preset: preset as PresetName, input, output };
}

export function main(argv: string[]): number {
  let args: CliArgs;
  try {
    args = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`error: ${err.message}`);
      console.error(USAGE);
      return 1;
    }
    throw err;
  }

  let csvText: string;
  try {
    csvText = readFileSync(args.input, "utf-8");
  } catch (err) {
    console.error(`error: cannot read ${args.input}: ${(err as Error).message}`);
    return 1;
  }

  try {
    const result = renderPreset(args.preset, csvText);
    writeFileSync(args.output, result.svg, "utf-8");
    console.log(`${args.preset}: wrote ${args.output}`);
    for (const note of result.notes) console.log(`  ${note}`);
    return 0;
  } catch (err) {
    if (
      err instanceof SchemaError ||
      err instanceof GapError ||
      err instanceof PresetDataError
    ) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

process.exit(main(process.argv.slice(2)));

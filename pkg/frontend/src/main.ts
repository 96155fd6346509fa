#!/usr/bin/env node
/** Render harness outputs to SVG.
 *
 *   qldpc-plots --csv results.csv [--merge-baseline extra.csv] --out ler.svg
 *   qldpc-plots --trace decode.json --out trace.svg
 *
 * Exit codes: 0 ok, 1 render failure, 2 usage or malformed input.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";
import { InputError, parseResultsCsv } from "./csv.js";
import { buildLerModel, renderLerSvg } from "./ler.js";
import { parseTrace, renderTraceSvg } from "./stall.js";

interface Args {
  csv?: string;
  mergeBaseline?: string;
  trace?: string;
  out?: string;
  title?: string;
}

const FLAGS: Record<string, keyof Args> = {
  "--csv": "csv",
  "--merge-baseline": "mergeBaseline",
  "--trace": "trace",
  "--out": "out",
  "--title": "title",
};

export function parseArgs(argv: string[]): Args {
  const args: Args = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i]!;
    const key = FLAGS[flag];
    if (!key) {
      throw new UsageError(`unknown flag ${flag}`);
    }
    const value = argv[i + 1];
    if (value === undefined) {
      throw new UsageError(`flag ${flag} needs a value`);
    }
    args[key] = value;
  }
  return args;
}

export class UsageError extends Error {}

export function run(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
    if (!args.out) {
      throw new UsageError("--out is required");
    }
    if (!!args.csv === !!args.trace) {
      throw new UsageError("pass exactly one of --csv or --trace");
    }
  } catch (exc) {
    console.error(`error: ${(exc as Error).message}`);
    return 2;
  }
  try {
    let svg: string;
    if (args.csv) {
      const rows = parseResultsCsv(readFileSync(args.csv, "utf8"), args.csv);
      if (args.mergeBaseline) {
        rows.push(...parseResultsCsv(readFileSync(args.mergeBaseline, "utf8"),
                                     args.mergeBaseline));
      }
      svg = renderLerSvg(buildLerModel(rows), { title: args.title });
    } else {
      const trace = parseTrace(readFileSync(args.trace!, "utf8"), args.trace);
      svg = renderTraceSvg(trace);
    }
    writeFileSync(args.out!, svg);
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (exc) {
    console.error(`error: ${(exc as Error).message}`);
    if (exc instanceof InputError ||
        (exc as NodeJS.ErrnoException).code === "ENOENT") {
      return 2;
    }
    return 1;
  }
}

const isDirectRun = process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (isDirectRun) {
  process.exit(run(process.argv.slice(2)));
}

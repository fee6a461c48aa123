#!/usr/bin/env node
/**
 * plotkit --kind <figure> --in <file> [--in <file> ...] --out <figure.svg>
 *         [--title <text>] [--annotate-p <float>]
 *
 * Reads the harness's frozen CSV formats and writes one SVG figure.
 * Exit codes: 0 ok, 1 internal failure, 2 usage / schema error.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";
import { parseArgs } from "node:util";

import { SchemaError, parseBerCsv, parseBoundsCsv, parseStatsCsv } from "./data.js";
import {
  FIGURE_KINDS,
  FigureKind,
  FigureOptions,
  berVsP,
  boundVsN,
  degenerateVsN,
  polarizationScatter,
  polarizationSorted,
} from "./figures.js";

function usage(msg: string): never {
  process.stderr.write(`plotkit: ${msg}\n`);
  process.stderr.write(
    `usage: plotkit --kind {${FIGURE_KINDS.join(",")}} --in <csv> [--in ...] ` +
      "--out <svg> [--title <text>] [--annotate-p <float>]\n",
  );
  process.exit(2);
}

export function render(
  kind: FigureKind,
  inputs: { name: string; text: string }[],
  opts: FigureOptions,
): string {
  switch (kind) {
    case "ber_vs_p":
      return berVsP(
        inputs.map((i) => ({ name: i.name, data: parseBerCsv(i.text) })),
        opts,
      );
    case "bound_vs_n":
      return boundVsN(inputs.flatMap((i) => parseBoundsCsv(i.text)), opts);
    case "degenerate_vs_n":
      return degenerateVsN(inputs.flatMap((i) => parseBoundsCsv(i.text)), opts);
    case "polarization_scatter":
      return polarizationScatter(
        inputs.map((i) => ({ name: i.name, data: parseStatsCsv(i.text) })),
        opts,
      );
    case "polarization_sorted":
      return polarizationSorted(
        inputs.map((i) => ({ name: i.name, data: parseStatsCsv(i.text) })),
        opts,
      );
  }
}

export function main(argv: string[]): number {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        kind: { type: "string" },
        in: { type: "string", multiple: true },
        out: { type: "string" },
        title: { type: "string" },
        "annotate-p": { type: "string" },
      },
    }));
  } catch (err) {
    usage((err as Error).message);
  }
  const kind = values.kind as FigureKind | undefined;
  if (!kind || !(FIGURE_KINDS as readonly string[]).includes(kind)) {
    usage(`--kind must be one of ${FIGURE_KINDS.join(", ")}`);
  }
  const inPaths = values.in ?? [];
  if (inPaths.length === 0) usage("at least one --in file is required");
  if (!values.out) usage("--out is required");
  const opts: FigureOptions = { title: values.title };
  if (values["annotate-p"] !== undefined) {
    const p = Number(values["annotate-p"]);
    if (!Number.isFinite(p)) usage("--annotate-p must be a number");
    opts.annotateP = p;
  }
  try {
    const inputs = inPaths.map((p) => ({
      name: basename(p).replace(/\.[^.]+$/, ""),
      text: readFileSync(p, "utf8"),
    }));
    const svg = render(kind, inputs, opts);
    writeFileSync(values.out, svg + "\n");
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`plotkit: ${err.message}\n`);
      return 2;
    }
    if ((err as NodeJS.ErrnoException).code === "ENOENT") {
      process.stderr.write(`plotkit: ${(err as Error).message}\n`);
      return 2;
    }
    throw err;
  }
  return 0;
}

const entry = process.argv[1];
if (entry && import.meta.url.endsWith(basename(entry))) {
  process.exit(main(process.argv.slice(2)));
}

import { existsSync, readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { parseStatsCsv } from "../src/data.js";
import { plateauShares, sortedWorstRates } from "../src/figures.js";
import { render } from "../src/cli.js";

// End-to-end checks against the CSV artifacts produced by the simulation
// harness (scripts/gen_results.py and scripts/make_bounds.py in the parent
// package). These are the same files the figure CLI is pointed at in
// practice, so every figure kind must render from them without error.

const RESULTS = join(dirname(fileURLToPath(import.meta.url)), "..", "..", "results");

function load(name: string): { name: string; text: string } {
  const path = join(RESULTS, name);
  if (!existsSync(path)) {
    throw new Error(
      `missing golden artifact ${path}; run scripts/gen_results.py and ` +
        "scripts/make_bounds.py in the parent package first",
    );
  }
  return { name: name.replace(/\.[^.]+$/, ""), text: readFileSync(path, "utf8") };
}

describe("golden artifacts", () => {
  it("renders the block-error crossover figure from the measured curves", () => {
    const svg = render(
      "ber_vs_p",
      [
        load("ber_polar_standard_L10.csv"),
        load("ber_bmera_standard_L10.csv"),
        load("ber_polar_symmetric_L10.csv"),
      ],
      { annotateP: 0.0992 },
    );
    expect(svg).toContain("<svg");
    expect((svg.match(/class="wilson-band"/g) ?? []).length).toBe(3);
  });

  it("renders the union-bound decay figure from the bounds tables", () => {
    const svg = render(
      "bound_vs_n",
      [load("bounds_depol.csv"), load("bounds_erasure.csv")],
      {},
    );
    expect(svg).toContain("<svg");
    expect(svg).toContain('data-name="polar-standard depol:0.0992"');
  });

  it("renders the degenerate-bound decay figure", () => {
    const svg = render("degenerate_vs_n", [load("bounds_erasure.csv")], {});
    expect(svg).toContain("<svg");
    expect(svg).toContain('data-name="polar-erasure-exact erasure:0.25"');
  });

  it("renders the per-wire polarization scatter", () => {
    const svg = render(
      "polarization_scatter",
      [load("genie_polar_standard_L8_erasure-0.25.csv")],
      {},
    );
    expect(svg).toContain("<svg");
    expect((svg.match(/<circle/g) ?? []).length).toBeGreaterThanOrEqual(256);
  });

  it("renders the sorted view and shows a two-plateau profile", () => {
    const input = load("genie_polar_standard_L8_erasure-0.25.csv");
    const svg = render("polarization_sorted", [input], {});
    expect(svg).toContain('class="sorted-rates"');

    const stats = parseStatsCsv(input.text);
    const shares = plateauShares(sortedWorstRates(stats));
    // A polarizing construction pushes a large share of wires onto the
    // near-perfect plateau and a large share onto the useless 1/2 plateau.
    expect(shares.low).toBeGreaterThan(0.25);
    expect(shares.high).toBeGreaterThan(0.25);
    expect(shares.low + shares.high).toBeGreaterThan(0.6);
  });
});

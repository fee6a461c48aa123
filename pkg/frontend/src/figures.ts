/**
 * The five figure kinds, each a pure (parsed files) -> SVG string transform.
 *
 *   ber_vs_p             block-error rate vs channel parameter, one curve per
 *                        input file, Wilson 95% bands
 *   bound_vs_n           union bound vs block size, log-y
 *   degenerate_vs_n      degenerate-event bound vs block size, log-y
 *   polarization_scatter per-wire decision-error rates vs wire index
 *   polarization_sorted  worst-quadrature rates in descending order
 *
 * Log-y points at or below the 1e-13 floor are drawn as downward triangle
 * markers on the floor line instead of being dropped.
 */

import {
  BerFile,
  BoundRow,
  SchemaError,
  StatsFile,
  channelParam,
  requireConsistentHashes,
} from "./data.js";
import {
  HEIGHT,
  MARGIN,
  SERIES_COLORS,
  Scale,
  Svg,
  WIDTH,
  drawAxes,
  linearScale,
  logScale,
} from "./svg.js";

export const FIGURE_KINDS = [
  "ber_vs_p",
  "bound_vs_n",
  "degenerate_vs_n",
  "polarization_scatter",
  "polarization_sorted",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureOptions {
  title?: string;
  /** draw a vertical reference line at this channel parameter */
  annotateP?: number;
}

const X0 = MARGIN.left;
const X1 = WIDTH - MARGIN.right;
const Y0 = HEIGHT - MARGIN.bottom;
const Y1 = MARGIN.top;

function seriesLabel(i: number, name: string): string {
  return `<g class="series" data-name="${name}"></g>`;
}

function legend(svg: Svg, names: string[]): void {
  names.forEach((name, i) => {
    const y = Y1 + 14 + 16 * i;
    svg.line(X1 - 150, y - 4, X1 - 126, y - 4, `stroke="${SERIES_COLORS[i % SERIES_COLORS.length]}" stroke-width="2"`);
    svg.text(X1 - 120, y, name);
  });
}

function annotate(svg: Svg, x: Scale, p: number | undefined): void {
  if (p === undefined) return;
  svg.line(x(p), Y0, x(p), Y1, 'stroke="#888" stroke-dasharray="4 3"');
  svg.text(x(p) + 4, Y1 + 12, `p=${p}`);
}

export function berVsP(
  files: { name: string; data: BerFile }[],
  opts: FigureOptions = {},
): string {
  if (files.length === 0) throw new SchemaError("no input series");
  const svg = new Svg();
  const ps = files.flatMap((f) => f.data.rows.map((r) => channelParam(r.channel)));
  const x = linearScale(Math.min(...ps), Math.max(...ps), X0, X1);
  const y = linearScale(0, 1, Y0, Y1);
  drawAxes(svg, x, y, "channel parameter p", "block error rate");
  annotate(svg, x, opts.annotateP);
  files.forEach((f, i) => {
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    const rows = [...f.data.rows].sort(
      (a, b) => channelParam(a.channel) - channelParam(b.channel),
    );
    svg.raw(seriesLabel(i, f.name));
    const band: [number, number][] = [
      ...rows.map((r): [number, number] => [x(channelParam(r.channel)), y(r.wilson95High)]),
      ...[...rows]
        .reverse()
        .map((r): [number, number] => [x(channelParam(r.channel)), y(r.wilson95Low)]),
    ];
    svg.path(band, `fill="${color}" fill-opacity="0.15" stroke="none" class="wilson-band"`, true);
    svg.path(
      rows.map((r): [number, number] => [x(channelParam(r.channel)), y(r.ber)]),
      `fill="none" stroke="${color}" stroke-width="1.5"`,
    );
    for (const r of rows) {
      svg.circle(x(channelParam(r.channel)), y(r.ber), 2.5, `fill="${color}"`);
    }
  });
  legend(svg, files.map((f) => f.name));
  return svg.render(opts.title ?? "block error rate vs channel parameter");
}

function boundFigure(
  rows: BoundRow[],
  value: (r: BoundRow) => number,
  yLabel: string,
  opts: FigureOptions,
  defaultTitle: string,
): string {
  if (rows.length === 0) throw new SchemaError("no input series");
  const groups = new Map<string, BoundRow[]>();
  for (const r of rows) {
    const key = `${r.family}-${r.decoder} ${r.channel}`;
    groups.set(key, [...(groups.get(key) ?? []), r]);
  }
  const svg = new Svg();
  const ns = rows.map((r) => r.n);
  const vals = rows.map(value);
  const x = linearScale(
    Math.log2(Math.min(...ns)),
    Math.log2(Math.max(...ns)),
    X0,
    X1,
  );
  const positive = vals.filter((v) => v > 0);
  const y = logScale(
    positive.length ? Math.min(...positive) : 1e-12,
    Math.max(...vals, 1e-12),
    Y0,
    Y1,
  );
  drawAxes(svg, x, y, "log2 block size n", yLabel);
  let i = 0;
  for (const [name, group] of groups) {
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    const sorted = [...group].sort((a, b) => a.n - b.n);
    svg.raw(seriesLabel(i, name));
    svg.path(
      sorted
        .filter((r) => !y.clipped(value(r)))
        .map((r): [number, number] => [x(Math.log2(r.n)), y(value(r))]),
      `fill="none" stroke="${color}" stroke-width="1.5"`,
    );
    for (const r of sorted) {
      const v = value(r);
      if (y.clipped(v)) svg.floorMarker(x(Math.log2(r.n)), y(v), color);
      else svg.circle(x(Math.log2(r.n)), y(v), 2.5, `fill="${color}"`);
    }
    i += 1;
  }
  legend(svg, [...groups.keys()]);
  return svg.render(opts.title ?? defaultTitle);
}

export function boundVsN(rows: BoundRow[], opts: FigureOptions = {}): string {
  return boundFigure(
    rows,
    (r) => r.unionBound,
    "union bound on block error",
    opts,
    "union bound vs block size",
  );
}

export function degenerateVsN(rows: BoundRow[], opts: FigureOptions = {}): string {
  return boundFigure(
    rows,
    (r) => r.degenerateBound,
    "degenerate-event bound",
    opts,
    "degenerate-event bound vs block size",
  );
}

export function polarizationScatter(
  files: { name: string; data: StatsFile }[],
  opts: FigureOptions = {},
): string {
  if (files.length === 0) throw new SchemaError("no input series");
  requireConsistentHashes(files.map((f) => f.data.configHash));
  const svg = new Svg();
  const n = Math.max(...files.map((f) => f.data.wires.length));
  const x = linearScale(0, n - 1, X0, X1);
  const y = linearScale(0, 0.55, Y0, Y1);
  drawAxes(svg, x, y, "wire index", "genie decision-error rate");
  svg.line(X0, y(0.5), X1, y(0.5), 'stroke="#888" stroke-dasharray="4 3"');
  files.forEach((f, fi) => {
    svg.raw(seriesLabel(fi, f.name));
    f.data.wires.forEach((w, i) => {
      svg.circle(x(w), y(f.data.errX[i]), 2, `fill="${SERIES_COLORS[0]}" fill-opacity="0.6" class="err-x"`);
      svg.circle(x(w), y(f.data.errZ[i]), 2, `fill="${SERIES_COLORS[1]}" fill-opacity="0.6" class="err-z"`);
    });
  });
  legend(svg, ["x quadrature", "z quadrature"]);
  return svg.render(opts.title ?? "per-wire decision-error rates");
}

/** Worst-quadrature rates, descending: the polarized two-plateau view. */
export function sortedWorstRates(stats: StatsFile): number[] {
  return stats.wires
    .map((_, i) => Math.max(stats.errX[i], stats.errZ[i]))
    .sort((a, b) => b - a);
}

export function polarizationSorted(
  files: { name: string; data: StatsFile }[],
  opts: FigureOptions = {},
): string {
  if (files.length === 0) throw new SchemaError("no input series");
  requireConsistentHashes(files.map((f) => f.data.configHash));
  const svg = new Svg();
  const n = Math.max(...files.map((f) => f.data.wires.length));
  const x = linearScale(0, n - 1, X0, X1);
  const y = linearScale(0, 0.55, Y0, Y1);
  drawAxes(svg, x, y, "rank (descending)", "worst-quadrature error rate");
  svg.line(X0, y(0.5), X1, y(0.5), 'stroke="#888" stroke-dasharray="4 3"');
  files.forEach((f, i) => {
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    svg.raw(seriesLabel(i, f.name));
    svg.path(
      sortedWorstRates(f.data).map((v, r): [number, number] => [x(r), y(v)]),
      `fill="none" stroke="${color}" stroke-width="1.5" class="sorted-rates"`,
    );
  });
  legend(svg, files.map((f) => f.name));
  return svg.render(opts.title ?? "sorted worst-quadrature rates");
}

/** Fraction of rates within `tol` of 0 and of 0.5: a quantitative check of the
 *  two-plateau structure of a polarized code. */
export function plateauShares(
  rates: number[],
  tol = 0.05,
): { low: number; high: number } {
  const n = rates.length || 1;
  return {
    low: rates.filter((r) => r <= tol).length / n,
    high: rates.filter((r) => Math.abs(r - 0.5) <= tol).length / n,
  };
}

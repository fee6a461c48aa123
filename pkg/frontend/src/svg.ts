/** Minimal SVG document builder: fixed layout, no DOM, deterministic output. */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export const WIDTH = 640;
export const HEIGHT = 420;
export const MARGIN: Margin = { top: 28, right: 16, bottom: 46, left: 64 };

export const SERIES_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];

const XML_ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
};

export function esc(s: string): string {
  return s.replace(/[&<>"]/g, (c) => XML_ESCAPES[c]);
}

export function fmt(v: number): string {
  if (!Number.isFinite(v)) throw new Error(`non-finite coordinate ${v}`);
  return Number(v.toFixed(2)).toString();
}

export class Svg {
  private parts: string[] = [];

  line(x1: number, y1: number, x2: number, y2: number, style: string): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${style}/>`,
    );
  }

  path(points: [number, number][], style: string, close = false): void {
    if (points.length === 0) return;
    const d =
      points
        .map(([x, y], i) => `${i === 0 ? "M" : "L"}${fmt(x)} ${fmt(y)}`)
        .join(" ") + (close ? " Z" : "");
    this.parts.push(`<path d="${d}" ${style}/>`);
  }

  circle(x: number, y: number, r: number, style: string): void {
    this.parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" ${style}/>`);
  }

  /** Downward-pointing triangle, used for values clipped at a log-axis floor. */
  floorMarker(x: number, y: number, color: string): void {
    const s = 4;
    this.path(
      [
        [x - s, y - s],
        [x + s, y - s],
        [x, y + s],
      ],
      `fill="${color}" class="floor-marker"`,
      true,
    );
  }

  text(x: number, y: number, content: string, style = ""): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" ${style}>${esc(content)}</text>`,
    );
  }

  raw(markup: string): void {
    this.parts.push(markup);
  }

  render(title: string): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="12">`,
      `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
      `<text x="${WIDTH / 2}" y="18" text-anchor="middle" font-size="14">${esc(title)}</text>`,
      ...this.parts,
      "</svg>",
    ].join("\n");
  }
}

export interface Scale {
  (v: number): number;
  readonly ticks: number[];
  /** true when v was clipped to the axis floor (log scales only) */
  readonly clipped: (v: number) => boolean;
}

export function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  if (hi <= lo) hi = lo + 1;
  const f = (v: number) => outLo + ((v - lo) / (hi - lo)) * (outHi - outLo);
  const step = niceStep(hi - lo);
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-12; t += step) {
    ticks.push(Number(t.toPrecision(12)));
  }
  return Object.assign(f, { ticks, clipped: () => false });
}

export const LOG_FLOOR = 1e-13;

/** Log scale; values at or below the floor are clipped to it and flagged so
 *  callers can draw floor markers instead of silently dropping points. */
export function logScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  lo = Math.max(lo, LOG_FLOOR);
  hi = Math.max(hi, lo * 10);
  const la = Math.log10(lo);
  const lb = Math.log10(hi);
  const f = (v: number) =>
    outLo + ((Math.log10(Math.max(v, LOG_FLOOR)) - la) / (lb - la)) * (outHi - outLo);
  const ticks: number[] = [];
  const stride = Math.max(1, Math.round((lb - la) / 8));
  for (let e = Math.ceil(la); e <= Math.floor(lb); e += stride) ticks.push(10 ** e);
  return Object.assign(f, { ticks, clipped: (v: number) => v <= LOG_FLOOR });
}

function niceStep(span: number): number {
  const raw = span / 6;
  const mag = 10 ** Math.floor(Math.log10(raw));
  for (const m of [1, 2, 5, 10]) {
    if (raw <= m * mag) return m * mag;
  }
  return 10 * mag;
}

export function tickLabel(v: number): string {
  if (v !== 0 && (Math.abs(v) < 1e-3 || Math.abs(v) >= 1e4)) {
    return v.toExponential(0).replace("e-", "e-").replace("e+", "e");
  }
  return Number(v.toPrecision(6)).toString();
}

export function drawAxes(
  svg: Svg,
  x: Scale,
  y: Scale,
  xLabel: string,
  yLabel: string,
): void {
  const axis = 'stroke="#333" stroke-width="1"';
  const grid = 'stroke="#ddd" stroke-width="0.5"';
  svg.line(MARGIN.left, HEIGHT - MARGIN.bottom, WIDTH - MARGIN.right, HEIGHT - MARGIN.bottom, axis);
  svg.line(MARGIN.left, MARGIN.top, MARGIN.left, HEIGHT - MARGIN.bottom, axis);
  for (const t of x.ticks) {
    const px = x(t);
    svg.line(px, MARGIN.top, px, HEIGHT - MARGIN.bottom, grid);
    svg.text(px, HEIGHT - MARGIN.bottom + 16, tickLabel(t), 'text-anchor="middle"');
  }
  for (const t of y.ticks) {
    const py = y(t);
    svg.line(MARGIN.left, py, WIDTH - MARGIN.right, py, grid);
    svg.text(MARGIN.left - 6, py + 4, tickLabel(t), 'text-anchor="end"');
  }
  svg.text(
    (MARGIN.left + WIDTH - MARGIN.right) / 2,
    HEIGHT - 8,
    xLabel,
    'text-anchor="middle"',
  );
  svg.text(
    14,
    (MARGIN.top + HEIGHT - MARGIN.bottom) / 2,
    yLabel,
    `text-anchor="middle" transform="rotate(-90 14 ${(MARGIN.top + HEIGHT - MARGIN.bottom) / 2})"`,
  );
}

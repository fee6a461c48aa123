/**
 * Parsers for the harness's frozen file formats.
 *
 * Channel-stats CSV:  header `wire,err_x,err_z,trials`, one row per wire.
 * Block-error CSV:    header `n,k,channel,decoder,trials,block_errors,
 *                     degenerate_only_events,ber,wilson95_low,wilson95_high,
 *                     wall_seconds`, one row per simulated point.
 * Bounds CSV:         header `family,decoder,channel,n,k,trials,union_bound,
 *                     union_bound_clamped,degenerate_bound,config_hash`.
 * Frozen-map JSON:    `{n, k, channel, family, decoder, roles}`.
 *
 * `#`-prefixed comment lines may precede any header; a
 * `# config_hash=<hex>` comment carries the producing run's digest. Fields
 * never contain commas or quotes, so splitting on commas is exact.
 */

export interface StatsFile {
  configHash: string | null;
  wires: number[];
  errX: number[];
  errZ: number[];
  trials: number;
}

export interface BerRow {
  n: number;
  k: number;
  channel: string;
  decoder: string;
  trials: number;
  blockErrors: number;
  degenerateOnlyEvents: number;
  ber: number;
  wilson95Low: number;
  wilson95High: number;
  wallSeconds: number;
}

export interface BerFile {
  configHash: string | null;
  rows: BerRow[];
}

export interface BoundRow {
  family: string;
  decoder: string;
  channel: string;
  n: number;
  k: number;
  trials: number;
  unionBound: number;
  unionBoundClamped: number;
  degenerateBound: number;
  configHash: string;
}

export class SchemaError extends Error {}

const STATS_HEADER = "wire,err_x,err_z,trials";
const BER_HEADER =
  "n,k,channel,decoder,trials,block_errors,degenerate_only_events,ber," +
  "wilson95_low,wilson95_high,wall_seconds";
const BOUNDS_HEADER =
  "family,decoder,channel,n,k,trials,union_bound,union_bound_clamped," +
  "degenerate_bound,config_hash";

interface Lines {
  configHash: string | null;
  header: string;
  rows: string[][];
}

function splitCsv(text: string): Lines {
  let configHash: string | null = null;
  const body: string[] = [];
  for (const raw of text.split(/\r?\n/)) {
    const line = raw.trim();
    if (!line) continue;
    if (line.startsWith("#")) {
      const m = line.match(/config_hash=([0-9a-f]+)/);
      if (m) configHash = m[1];
      continue;
    }
    body.push(line);
  }
  if (body.length === 0) throw new SchemaError("empty CSV");
  return {
    configHash,
    header: body[0],
    rows: body.slice(1).map((l) => l.split(",")),
  };
}

function num(field: string, context: string): number {
  const v = Number(field);
  if (!Number.isFinite(v)) {
    throw new SchemaError(`non-numeric field ${JSON.stringify(field)} in ${context}`);
  }
  return v;
}

export function parseStatsCsv(text: string): StatsFile {
  const { configHash, header, rows } = splitCsv(text);
  if (header !== STATS_HEADER) {
    throw new SchemaError(`expected channel-stats header, got ${JSON.stringify(header)}`);
  }
  const out: StatsFile = { configHash, wires: [], errX: [], errZ: [], trials: 0 };
  for (const r of rows) {
    if (r.length !== 4) throw new SchemaError("channel-stats row width");
    out.wires.push(num(r[0], "stats"));
    out.errX.push(num(r[1], "stats"));
    out.errZ.push(num(r[2], "stats"));
    out.trials = num(r[3], "stats");
  }
  if (out.wires.length === 0) throw new SchemaError("channel-stats CSV has no rows");
  return out;
}

export function parseBerCsv(text: string): BerFile {
  const { configHash, header, rows } = splitCsv(text);
  if (header !== BER_HEADER) {
    throw new SchemaError(`expected block-error header, got ${JSON.stringify(header)}`);
  }
  const parsed = rows.map((r): BerRow => {
    if (r.length !== 11) throw new SchemaError("block-error row width");
    return {
      n: num(r[0], "ber"),
      k: num(r[1], "ber"),
      channel: r[2],
      decoder: r[3],
      trials: num(r[4], "ber"),
      blockErrors: num(r[5], "ber"),
      degenerateOnlyEvents: num(r[6], "ber"),
      ber: num(r[7], "ber"),
      wilson95Low: num(r[8], "ber"),
      wilson95High: num(r[9], "ber"),
      wallSeconds: num(r[10], "ber"),
    };
  });
  if (parsed.length === 0) throw new SchemaError("block-error CSV has no rows");
  return { configHash, rows: parsed };
}

export function parseBoundsCsv(text: string): BoundRow[] {
  const { header, rows } = splitCsv(text);
  if (header !== BOUNDS_HEADER) {
    throw new SchemaError(`expected bounds header, got ${JSON.stringify(header)}`);
  }
  const parsed = rows.map((r): BoundRow => {
    if (r.length !== 10) throw new SchemaError("bounds row width");
    return {
      family: r[0],
      decoder: r[1],
      channel: r[2],
      n: num(r[3], "bounds"),
      k: num(r[4], "bounds"),
      trials: num(r[5], "bounds"),
      unionBound: num(r[6], "bounds"),
      unionBoundClamped: num(r[7], "bounds"),
      degenerateBound: num(r[8], "bounds"),
      configHash: r[9],
    };
  });
  if (parsed.length === 0) throw new SchemaError("bounds CSV has no rows");
  return parsed;
}

/** Channel-spec suffix as a number, e.g. "depol:0.08" -> 0.08. */
export function channelParam(channel: string): number {
  const m = channel.match(/^[a-z]+:([0-9eE.+-]+)/);
  if (!m) throw new SchemaError(`cannot read channel parameter from ${JSON.stringify(channel)}`);
  return Number(m[1]);
}

/** All inputs of one figure must come from runs with a recorded, equal hash
 *  (or all have none, for hand-built fixtures). */
export function requireConsistentHashes(hashes: (string | null)[]): void {
  const seen = new Set(hashes.filter((h): h is string => h !== null));
  if (seen.size > 1) {
    throw new SchemaError(`mixed config hashes: ${[...seen].sort().join(", ")}`);
  }
}

import { describe, expect, it } from "vitest";

import {
  SchemaError,
  channelParam,
  parseBerCsv,
  parseBoundsCsv,
  parseStatsCsv,
  requireConsistentHashes,
} from "../src/data.js";

const STATS = `# config_hash=abc123def456
# family=polar decoder=standard channel=erasure:0.25 trials=1000 seed=1
wire,err_x,err_z,trials
0,0.5,0.001,1000
1,0.01,0.49,1000
2,0,0,1000
`;

const BER = `# config_hash=0123456789ab
n,k,channel,decoder,trials,block_errors,degenerate_only_events,ber,wilson95_low,wilson95_high,wall_seconds
1024,512,depol:0.05,standard,10000,120,3,0.012,0.0100,0.0143,12.500
1024,512,depol:0.08,standard,10000,2400,10,0.24,0.2317,0.2485,12.900
`;

const BOUNDS = `family,decoder,channel,n,k,trials,union_bound,union_bound_clamped,degenerate_bound,config_hash
polar,standard,depol:0.0992,64,8,100000,0.31,0.31,0.02,aaaaaaaaaaaa
polar,standard,depol:0.0992,256,32,100000,0.11,0.11,0.001,bbbbbbbbbbbb
`;

describe("parseStatsCsv", () => {
  it("reads wires, rates, trials, and the config hash comment", () => {
    const s = parseStatsCsv(STATS);
    expect(s.configHash).toBe("abc123def456");
    expect(s.wires).toEqual([0, 1, 2]);
    expect(s.errX).toEqual([0.5, 0.01, 0]);
    expect(s.errZ).toEqual([0.001, 0.49, 0]);
    expect(s.trials).toBe(1000);
  });

  it("rejects the wrong header", () => {
    expect(() => parseStatsCsv("a,b,c\n1,2,3\n")).toThrow(SchemaError);
  });

  it("rejects non-numeric fields", () => {
    expect(() =>
      parseStatsCsv("wire,err_x,err_z,trials\n0,oops,0,100\n"),
    ).toThrow(SchemaError);
  });

  it("rejects empty and header-only input", () => {
    expect(() => parseStatsCsv("")).toThrow(SchemaError);
    expect(() => parseStatsCsv("wire,err_x,err_z,trials\n")).toThrow(SchemaError);
  });
});

describe("parseBerCsv", () => {
  it("reads rows with typed fields", () => {
    const f = parseBerCsv(BER);
    expect(f.configHash).toBe("0123456789ab");
    expect(f.rows).toHaveLength(2);
    expect(f.rows[0].channel).toBe("depol:0.05");
    expect(f.rows[0].ber).toBeCloseTo(0.012, 12);
    expect(f.rows[1].wilson95High).toBeCloseTo(0.2485, 12);
  });

  it("rejects rows of the wrong width", () => {
    const lines = BER.split("\n");
    const broken = [lines[1], "1,2,depol:0.1,standard,10"].join("\n");
    expect(() => parseBerCsv(broken)).toThrow(SchemaError);
  });
});

describe("parseBoundsCsv", () => {
  it("reads rows with per-row hashes", () => {
    const rows = parseBoundsCsv(BOUNDS);
    expect(rows).toHaveLength(2);
    expect(rows[0].unionBound).toBeCloseTo(0.31, 12);
    expect(rows[1].n).toBe(256);
    expect(rows[1].configHash).toBe("bbbbbbbbbbbb");
  });

  it("rejects a stats file passed as bounds", () => {
    expect(() => parseBoundsCsv(STATS)).toThrow(SchemaError);
  });
});

describe("channelParam", () => {
  it("extracts the numeric parameter", () => {
    expect(channelParam("depol:0.08")).toBeCloseTo(0.08, 12);
    expect(channelParam("erasure:0.25")).toBeCloseTo(0.25, 12);
    expect(channelParam("xz:0.1,0.02")).toBeCloseTo(0.1, 12);
  });

  it("rejects unparseable channel specs", () => {
    expect(() => channelParam("garbage")).toThrow(SchemaError);
  });
});

describe("requireConsistentHashes", () => {
  it("accepts equal or missing hashes", () => {
    expect(() => requireConsistentHashes(["a", "a", null])).not.toThrow();
    expect(() => requireConsistentHashes([null, null])).not.toThrow();
  });

  it("refuses mixed hashes", () => {
    expect(() => requireConsistentHashes(["a", "b"])).toThrow(/mixed config hashes/);
  });
});

import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import { groupSeries, InputError, parseResultsCsv, seriesKey } from "../src/csv.js";

const FIXTURE = new URL("./fixtures/benchmark.csv", import.meta.url).pathname;

describe("parseResultsCsv", () => {
  it("reads the harness fixture", () => {
    const rows = parseResultsCsv(readFileSync(FIXTURE, "utf8"));
    expect(rows).toHaveLength(6);
    expect(rows[0]).toMatchObject({ code: "ghp-882-24", decoder: "bp", p: 0.02 });
    expect(rows[0]!.shots).toBe(100);
    expect(rows.every((r) => Number.isFinite(r.ler))).toBe(true);
  });

  it("rejects a missing column", () => {
    const text = "code,decoder,p,shots,failures,ler,stderr\n a,b,0.1,10,1,0.1,0.03\n";
    expect(() => parseResultsCsv(text)).toThrow(InputError);
    expect(() => parseResultsCsv(text)).toThrow(/missing column 'seconds'/);
  });

  it("rejects non-numeric cells", () => {
    const text = "code,decoder,p,shots,failures,ler,stderr,seconds\na,b,x,10,1,0.1,0.03,1\n";
    expect(() => parseResultsCsv(text)).toThrow(/bad number in 'p'/);
  });

  it("rejects an empty file", () => {
    expect(() => parseResultsCsv("")).toThrow(InputError);
  });
});

describe("groupSeries", () => {
  it("groups by code and decoder and sorts by p", () => {
    const rows = parseResultsCsv(readFileSync(FIXTURE, "utf8"));
    const groups = groupSeries(rows);
    expect([...groups.keys()].sort()).toEqual(["ghp-882-24/bp", "ghp-882-24/qccnr"]);
    for (const series of groups.values()) {
      const ps = series.map((r) => r.p);
      expect(ps).toEqual([...ps].sort((a, b) => a - b));
    }
  });

  it("series keys are code/decoder", () => {
    const rows = parseResultsCsv(readFileSync(FIXTURE, "utf8"));
    expect(seriesKey(rows[0]!)).toBe("ghp-882-24/bp");
  });
});

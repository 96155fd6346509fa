/** Reader for the harness results CSV. */

/** Raised for malformed or incomplete input files; maps to exit code 2. */
export class InputError extends Error {}

export interface ResultRow {
  code: string;
  decoder: string;
  p: number;
  shots: number;
  failures: number;
  ler: number;
  stderr: number;
  seconds: number;
}

export const REQUIRED_COLUMNS = [
  "code", "decoder", "p", "shots", "failures", "ler", "stderr", "seconds",
] as const;

export function parseResultsCsv(text: string, source = "csv"): ResultRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length < 1) {
    throw new InputError(`${source}: empty file`);
  }
  const header = lines[0]!.split(",").map((h) => h.trim());
  const index = new Map(header.map((h, i) => [h, i]));
  for (const col of REQUIRED_COLUMNS) {
    if (!index.has(col)) {
      throw new InputError(`${source}: missing column '${col}'`);
    }
  }
  const rows: ResultRow[] = [];
  for (const [lineNo, line] of lines.slice(1).entries()) {
    const cells = line.split(",");
    const get = (col: string) => (cells[index.get(col)!] ?? "").trim();
    const num = (col: string) => {
      const v = Number(get(col));
      if (!Number.isFinite(v)) {
        throw new InputError(`${source}: line ${lineNo + 2}: bad number in '${col}'`);
      }
      return v;
    };
    rows.push({
      code: get("code"),
      decoder: get("decoder"),
      p: num("p"),
      shots: num("shots"),
      failures: num("failures"),
      ler: num("ler"),
      stderr: num("stderr"),
      seconds: num("seconds"),
    });
  }
  return rows;
}

/** Series key used for grouping and legend labels. */
export function seriesKey(row: ResultRow): string {
  return `${row.code}/${row.decoder}`;
}

export function groupSeries(rows: ResultRow[]): Map<string, ResultRow[]> {
  const out = new Map<string, ResultRow[]>();
  for (const row of rows) {
    const key = seriesKey(row);
    if (!out.has(key)) {
      out.set(key, []);
    }
    out.get(key)!.push(row);
  }
  for (const series of out.values()) {
    series.sort((a, b) => a.p - b.p);
  }
  return out;
}

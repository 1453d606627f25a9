/** Grouped means and standard errors over parsed CSV rows. */

import { Table } from "./csv";

export interface SeriesPoint {
  x: number;
  y: number;
  /** 1.96 * standard error of the mean (0 for single observations). */
  halfWidth: number;
}

export function mean(xs: number[]): number {
  if (xs.length === 0) throw new Error("mean of empty sample");
  return xs.reduce((a, b) => a + b, 0) / xs.length;
}

export function sem(xs: number[]): number {
  if (xs.length < 2) return 0;
  const mu = mean(xs);
  const variance =
    xs.reduce((acc, v) => acc + (v - mu) * (v - mu), 0) / (xs.length - 1);
  return Math.sqrt(variance / xs.length);
}

/**
 * Group rows by `keyCols` values, then aggregate `yCol` against the numeric
 * `xCol` inside each group: one series per distinct key, one point per
 * distinct x (mean +- 1.96 sem across rows).
 */
export function groupedSeries(
  table: Table,
  keyCols: string[],
  xCol: string,
  yCol: string,
  rowFilter?: (row: Record<string, string>) => boolean,
): Map<string, SeriesPoint[]> {
  const idx = new Map<string, number>();
  table.header.forEach((h, i) => idx.set(h, i));
  for (const c of [...keyCols, xCol, yCol]) {
    if (!idx.has(c)) {
      throw new Error(`column '${c}' missing (have: ${table.header.join(", ")})`);
    }
  }
  const buckets = new Map<string, Map<number, number[]>>();
  for (const row of table.rows) {
    if (rowFilter) {
      const named: Record<string, string> = {};
      table.header.forEach((h, i) => (named[h] = row[i]!));
      if (!rowFilter(named)) continue;
    }
    const key = keyCols.map((c) => row[idx.get(c)!]).join(" ");
    const rawY = row[idx.get(yCol)!]!;
    if (rawY === "") continue; // optional columns may be empty
    const x = Number(row[idx.get(xCol)!]);
    const y = Number(rawY);
    if (!Number.isFinite(x) || !Number.isFinite(y)) {
      throw new Error(`non-numeric data in '${xCol}'/'${yCol}'`);
    }
    if (!buckets.has(key)) buckets.set(key, new Map());
    const series = buckets.get(key)!;
    if (!series.has(x)) series.set(x, []);
    series.get(x)!.push(y);
  }
  const out = new Map<string, SeriesPoint[]>();
  for (const key of [...buckets.keys()].sort()) {
    const pts: SeriesPoint[] = [...buckets.get(key)!.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([x, ys]) => ({ x, y: mean(ys), halfWidth: 1.96 * sem(ys) }));
    out.set(key, pts);
  }
  return out;
}

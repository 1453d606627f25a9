import assert from "node:assert/strict";
import { test } from "node:test";

import { groupedSeries, mean, sem } from "../src/aggregate";
import { parseCsv } from "../src/csv";

test("mean and sem", () => {
  assert.equal(mean([1, 2, 3]), 2);
  assert.equal(sem([5]), 0);
  assert.ok(Math.abs(sem([1, 2, 3]) - Math.sqrt(1 / 3)) < 1e-12);
  assert.throws(() => mean([]), /empty/);
});

test("groupedSeries groups, sorts, and averages", () => {
  const table = parseCsv(
    "k,m,v\na,2,1.0\na,2,3.0\na,1,5.0\nb,1,7.0\n",
  );
  const grouped = groupedSeries(table, ["k"], "m", "v");
  assert.deepEqual([...grouped.keys()], ["a", "b"]);
  const a = grouped.get("a")!;
  assert.deepEqual(a.map((p) => p.x), [1, 2]);
  assert.equal(a[1]!.y, 2.0);
  assert.ok(a[1]!.halfWidth > 0);
  assert.equal(grouped.get("b")![0]!.halfWidth, 0);
});

test("groupedSeries skips empty optional values and honors filters", () => {
  const table = parseCsv("k,m,v\na,1,\na,2,4.0\nb,2,9.0\n");
  const grouped = groupedSeries(table, ["k"], "m", "v",
    (row) => row["k"] !== "b");
  assert.deepEqual([...grouped.keys()], ["a"]);
  assert.deepEqual(grouped.get("a")!.map((p) => p.x), [2]);
});

test("groupedSeries rejects missing columns", () => {
  const table = parseCsv("k,m,v\na,1,2\n");
  assert.throws(() => groupedSeries(table, ["k"], "m", "nope"), /missing/);
});

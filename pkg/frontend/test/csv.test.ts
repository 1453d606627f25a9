import assert from "node:assert/strict";
import { test } from "node:test";

import { column, numericColumn, parseCsv } from "../src/csv";

test("parses provenance, header, and rows", () => {
  const table = parseCsv("# pareto-lab 0.3 experiment=x config-sha256=abc\nm,v\n2,0.5\n3,0.7\n");
  assert.equal(table.provenance, "pareto-lab 0.3 experiment=x config-sha256=abc");
  assert.deepEqual(table.header, ["m", "v"]);
  assert.deepEqual(table.rows, [["2", "0.5"], ["3", "0.7"]]);
});

test("handles quoted fields and CRLF", () => {
  const table = parseCsv('a,b\r\n"x,y",2\r\n"he said ""hi""",3\r\n');
  assert.deepEqual(table.rows[0], ["x,y", "2"]);
  assert.deepEqual(table.rows[1], ['he said "hi"', "3"]);
});

test("rejects a file with no header", () => {
  assert.throws(() => parseCsv("# only a comment\n"), /no data/);
  assert.throws(() => parseCsv(""), /no data/);
});

test("rejects ragged rows", () => {
  assert.throws(() => parseCsv("a,b\n1\n"), /malformed row/);
});

test("column accessors fail loudly on missing columns", () => {
  const table = parseCsv("a,b\n1,2\n");
  assert.deepEqual(column(table, "a"), ["1"]);
  assert.throws(() => column(table, "zz"), /column 'zz' missing/);
  assert.deepEqual(numericColumn(table, "b"), [2]);
  assert.throws(() => numericColumn(parseCsv("a\nx\n"), "a"), /non-numeric/);
});

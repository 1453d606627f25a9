import assert from "node:assert/strict";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { test } from "node:test";

import { FIGURES, renderAll, renderOne } from "../src/figures";
import { renderFigure } from "../src/svg";

const FIXTURES = path.join(__dirname, "..", "..", "test", "fixtures");

function tmpdir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "figures-"));
}

test("every experiment fixture renders to SVG", () => {
  for (const fig of FIGURES) {
    const svg = renderOne(path.join(FIXTURES, fig.csv), fig.build);
    assert.ok(svg.startsWith("<svg"), fig.csv);
    assert.ok(svg.includes("config-sha256="), `${fig.csv} carries provenance`);
  }
});

test("renderAll writes all eight figures plus an index page", () => {
  const out = tmpdir();
  const summary = renderAll(FIXTURES, out);
  assert.equal(summary.rendered.length, 8);
  assert.deepEqual(summary.missing, []);
  assert.deepEqual(summary.failed, []);
  for (const fig of FIGURES) {
    assert.ok(fs.existsSync(path.join(out, fig.out)), fig.out);
  }
  const index = fs.readFileSync(path.join(out, "index.html"), "utf-8");
  assert.ok(index.includes("pareto-proportion.svg"));
});

test("rerunning produces byte-identical outputs", () => {
  const out1 = tmpdir();
  const out2 = tmpdir();
  renderAll(FIXTURES, out1);
  renderAll(FIXTURES, out2);
  for (const fig of FIGURES) {
    const a = fs.readFileSync(path.join(out1, fig.out));
    const b = fs.readFileSync(path.join(out2, fig.out));
    assert.ok(a.equals(b), fig.out);
  }
});

test("a missing input is tolerated with a warning", () => {
  const partial = tmpdir();
  for (const fig of FIGURES) {
    if (fig.csv !== "hv-study.csv") {
      fs.copyFileSync(path.join(FIXTURES, fig.csv), path.join(partial, fig.csv));
    }
  }
  const summary = renderAll(partial, tmpdir());
  assert.equal(summary.rendered.length, 7);
  assert.deepEqual(summary.missing, ["hv-study.csv"]);
  assert.deepEqual(summary.failed, []);
});

test("an empty CSV is an explicit no-data failure", () => {
  const dir = tmpdir();
  const csv = path.join(dir, "pareto-proportion.csv");
  fs.writeFileSync(csv, "# provenance\nm,seed,proportion\n");
  assert.throws(() => renderOne(csv, FIGURES[0]!.build), /no data/);
  const summary = renderAll(dir, tmpdir());
  assert.equal(summary.failed.length, 1);
  assert.match(summary.failed[0]!.error, /no data/);
});

test("a renamed column is a descriptive failure", () => {
  const dir = tmpdir();
  fs.writeFileSync(
    path.join(dir, "weight-distances.csv"),
    "# provenance\nm,T,avg,half_width,mu\n2,1.0,0.5,0.01,100\n",
  );
  const summary = renderAll(dir, tmpdir());
  assert.equal(summary.failed.length, 1);
  assert.match(summary.failed[0]!.error, /column 'mean' missing/);
});

test("log-scale figures reject all-nonpositive data", () => {
  assert.throws(
    () =>
      renderFigure({
        title: "t",
        xLabel: "x",
        yLabel: "y",
        logY: true,
        series: [{ label: "s", points: [{ x: 1, y: 0, halfWidth: 0 }] }],
      }),
    /log scale/,
  );
});

test("figures never mutate their inputs", () => {
  const src = path.join(FIXTURES, "nd-pairs.csv");
  const before = fs.readFileSync(src);
  renderOne(src, FIGURES[1]!.build);
  assert.ok(before.equals(fs.readFileSync(src)));
});

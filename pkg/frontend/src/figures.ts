/** One figure builder per pareto-lab experiment CSV. */

import * as fs from "node:fs";
import * as path from "node:path";

import { groupedSeries, SeriesPoint } from "./aggregate";
import { parseCsv, Table } from "./csv";
import { FigureSpec, renderFigure, Series } from "./svg";

export type Builder = (table: Table) => FigureSpec;

function toSeries(
  grouped: Map<string, SeriesPoint[]>,
  labelOf: (key: string) => string,
  opts: { dashed?: boolean; band?: boolean } = {},
): Series[] {
  return [...grouped.entries()].map(([key, points]) => ({
    label: labelOf(key),
    points,
    dashed: opts.dashed,
    band: opts.band,
  }));
}

function footer(table: Table): string {
  return table.provenance;
}

export function paretoProportionFigure(table: Table): FigureSpec {
  return {
    title: "Pareto-optimal share of the solution space",
    xLabel: "objectives m",
    yLabel: "proportion Pareto optimal",
    series: toSeries(groupedSeries(table, [], "m", "proportion"), () => "mean over seeds", { band: true }),
    footer: footer(table),
  };
}

export function ndPairsFigure(table: Table): FigureSpec {
  const empirical = toSeries(
    groupedSeries(table, ["mu"], "m", "proportion_all_nd"),
    (k) => `observed mu=${k}`,
  );
  const theory = toSeries(
    groupedSeries(table, ["mu"], "m", "theory_all_nd"),
    (k) => `model mu=${k}`,
    { dashed: true },
  );
  return {
    title: "All random pairs mutually non-dominated",
    xLabel: "objectives m",
    yLabel: "probability",
    series: [...empirical, ...theory],
    footer: footer(table),
  };
}

export function ndPopulationFigure(table: Table): FigureSpec {
  const prob = toSeries(
    groupedSeries(table, ["mu"], "m", "prob_one_nondominated"),
    (k) => `P(nd) mu=${k}`,
  );
  const share = toSeries(
    groupedSeries(table, ["mu"], "m", "proportion_nondominated"),
    (k) => `share mu=${k}`,
    { dashed: true },
  );
  return {
    title: "Non-dominance within random populations",
    xLabel: "objectives m",
    yLabel: "probability / share",
    series: [...prob, ...share],
    footer: footer(table),
  };
}

export function heterogeneityFigure(table: Table): FigureSpec {
  const maxd = toSeries(
    groupedSeries(table, ["distribution"], "m", "max_diff"),
    (k) => `max ${k}`,
  );
  const mind = toSeries(
    groupedSeries(table, ["distribution"], "m", "min_diff"),
    (k) => `min ${k}`,
    { dashed: true },
  );
  return {
    title: "Latency spread across objectives",
    xLabel: "objectives m",
    yLabel: "evaluation-time difference",
    series: [...maxd, ...mind],
    footer: footer(table),
  };
}

export function solutionDistancesFigure(table: Table): FigureSpec {
  const hamming = toSeries(
    groupedSeries(table, ["space"], "m", "hamming"),
    (k) => `Hamming ${k}`,
  );
  const euclid = toSeries(
    groupedSeries(table, ["space"], "m", "euclidean"),
    (k) => `Euclidean ${k}`,
    { dashed: true },
  );
  return {
    title: "Distances between random and Pareto-optimal solutions",
    xLabel: "objectives m",
    yLabel: "distance",
    series: [...hamming, ...euclid],
    footer: footer(table),
  };
}

export function archiveBenchFigure(table: Table): FigureSpec {
  const ms = [...new Set(table.rows.map((r) => Number(r[table.header.indexOf("m")])))]
    .sort((a, b) => a - b);
  const chosen = new Set([ms[0], ms[ms.length - 1]]);
  const perOffer = new Map<string, SeriesPoint[]>();
  const idx = (c: string) => table.header.indexOf(c);
  for (const c of ["backend", "m", "decile", "offered", "comparisons"]) {
    if (idx(c) < 0) throw new Error(`column '${c}' missing`);
  }
  const acc = new Map<string, Map<number, number[]>>();
  for (const row of table.rows) {
    const m = Number(row[idx("m")]);
    if (!chosen.has(m)) continue;
    const offered = Number(row[idx("offered")]);
    if (offered <= 0) continue;
    const key = `${row[idx("backend")]} m=${m}`;
    const decile = Number(row[idx("decile")]);
    const cost = Number(row[idx("comparisons")]) / offered;
    if (!acc.has(key)) acc.set(key, new Map());
    const series = acc.get(key)!;
    if (!series.has(decile)) series.set(decile, []);
    series.get(decile)!.push(cost);
  }
  for (const key of [...acc.keys()].sort()) {
    const pts = [...acc.get(key)!.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([x, ys]) => ({
        x,
        y: ys.reduce((a, b) => a + b, 0) / ys.length,
        halfWidth: 0,
      }));
    perOffer.set(key, pts);
  }
  return {
    title: "Archive update cost by archive-size decile",
    xLabel: "archive-size decile",
    yLabel: "comparisons per offered solution",
    series: toSeries(perOffer, (k) => k),
    logY: true,
    footer: footer(table),
  };
}

export function hvStudyFigure(table: Table): FigureSpec {
  const midx = table.header.indexOf("m");
  if (midx < 0) throw new Error("column 'm' missing");
  const ms = [...new Set(table.rows.map((r) => Number(r[midx])))].sort((a, b) => a - b);
  const pick = ms[ms.length - 1];
  return {
    title: `Monte-Carlo sample demand (m=${pick})`,
    xLabel: "front size N",
    yLabel: "samples until target width",
    series: toSeries(
      groupedSeries(table, ["kind"], "N", "mc_samples",
        (row) => Number(row["m"]) === pick),
      (k) => k,
    ),
    footer: footer(table),
  };
}

export function weightDistancesFigure(table: Table): FigureSpec {
  return {
    title: "Distance between simplex-lattice weight vectors",
    xLabel: "objectives m",
    yLabel: "mean neighbor distance",
    series: toSeries(
      groupedSeries(table, ["T"], "m", "mean"),
      (k) => `T=${Number(k) * 100}%`,
      { band: true },
    ),
    footer: footer(table),
  };
}

export const FIGURES: ReadonlyArray<{ csv: string; out: string; build: Builder }> = [
  { csv: "pareto-proportion.csv", out: "pareto-proportion.svg", build: paretoProportionFigure },
  { csv: "nd-pairs.csv", out: "nd-pairs.svg", build: ndPairsFigure },
  { csv: "nd-population.csv", out: "nd-population.svg", build: ndPopulationFigure },
  { csv: "heterogeneity.csv", out: "heterogeneity.svg", build: heterogeneityFigure },
  { csv: "solution-distances.csv", out: "solution-distances.svg", build: solutionDistancesFigure },
  { csv: "archive-bench.csv", out: "archive-bench.svg", build: archiveBenchFigure },
  { csv: "hv-study.csv", out: "hv-study.svg", build: hvStudyFigure },
  { csv: "weight-distances.csv", out: "weight-distances.svg", build: weightDistancesFigure },
];

export interface RenderSummary {
  rendered: string[];
  missing: string[];
  failed: { csv: string; error: string }[];
}

export function renderOne(csvPath: string, build: Builder): string {
  const table = parseCsv(fs.readFileSync(csvPath, "utf-8"));
  if (table.rows.length === 0) {
    throw new Error(`no data: ${path.basename(csvPath)} holds a header only`);
  }
  return renderFigure(build(table));
}

export function renderAll(inDir: string, outDir: string): RenderSummary {
  const summary: RenderSummary = { rendered: [], missing: [], failed: [] };
  fs.mkdirSync(outDir, { recursive: true });
  for (const fig of FIGURES) {
    const csvPath = path.join(inDir, fig.csv);
    if (!fs.existsSync(csvPath)) {
      summary.missing.push(fig.csv);
      continue;
    }
    try {
      const svg = renderOne(csvPath, fig.build);
      fs.writeFileSync(path.join(outDir, fig.out), svg);
      summary.rendered.push(fig.out);
    } catch (err) {
      summary.failed.push({ csv: fig.csv, error: String(err) });
    }
  }
  fs.writeFileSync(path.join(outDir, "index.html"), indexPage(summary));
  return summary;
}

export function indexPage(summary: RenderSummary): string {
  const items = summary.rendered
    .map((f) => `    <li><a href="${f}">${f}</a><br/><img src="${f}" width="640"/></li>`)
    .join("\n");
  const warnings = summary.missing
    .map((f) => `    <li>missing input: ${f}</li>`)
    .join("\n");
  return [
    "<!DOCTYPE html>",
    "<html><head><meta charset=\"utf-8\"/><title>pareto-lab figures</title></head>",
    "<body>",
    "  <h1>pareto-lab figures</h1>",
    "  <ul>",
    items,
    "  </ul>",
    warnings ? "  <h2>warnings</h2>\n  <ul>\n" + warnings + "\n  </ul>" : "",
    "</body></html>",
    "",
  ].join("\n");
}

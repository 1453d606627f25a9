#!/usr/bin/env node
/** CLI: `figures --in RESULTS_DIR --out FIGURES_DIR`
 *
 * Renders one SVG per experiment CSV found in the input directory plus a
 * static index page. Missing inputs are tolerated with warnings; a present
 * but unreadable/empty CSV is an error. Exit code 0 when every present
 * input rendered, 1 otherwise (including "nothing rendered").
 */

import { renderAll } from "./figures";

function parseArgs(argv: string[]): { inDir: string; outDir: string } {
  let inDir = "";
  let outDir = "";
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--in") inDir = argv[++i] ?? "";
    else if (arg === "--out") outDir = argv[++i] ?? "";
    else if (arg === "--help" || arg === "-h") {
      console.log("usage: figures --in RESULTS_DIR --out FIGURES_DIR");
      process.exit(0);
    } else {
      console.error(`unknown argument: ${arg}`);
      process.exit(2);
    }
  }
  if (!inDir || !outDir) {
    console.error("usage: figures --in RESULTS_DIR --out FIGURES_DIR");
    process.exit(2);
  }
  return { inDir, outDir };
}

function main(): void {
  const { inDir, outDir } = parseArgs(process.argv.slice(2));
  const summary = renderAll(inDir, outDir);
  for (const name of summary.rendered) {
    console.log(`rendered ${name}`);
  }
  for (const name of summary.missing) {
    console.warn(`warning: input not found: ${name}`);
  }
  for (const fail of summary.failed) {
    console.error(`error: ${fail.csv}: ${fail.error}`);
  }
  if (summary.failed.length > 0 || summary.rendered.length === 0) {
    process.exit(1);
  }
}

main();

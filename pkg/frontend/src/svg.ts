/** Dependency-free deterministic SVG line charts.
 *
 * Output is a pure function of the input spec: fixed canvas, fixed palette,
 * fixed number formatting, no timestamps or random identifiers.
 */

import { SeriesPoint } from "./aggregate";

export interface Series {
  label: string;
  points: SeriesPoint[];
  dashed?: boolean;
  /** Draw a shaded +-halfWidth band around the line. */
  band?: boolean;
}

export interface FigureSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  logY?: boolean;
  /** Caption footer, e.g. the harness provenance line. */
  footer?: string;
}

const WIDTH = 720;
const HEIGHT = 440;
const MARGIN = { top: 42, right: 24, bottom: 84, left: 72 };
const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2",
];

function fmt(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite coordinate ${x}`);
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

function fmtTick(x: number): string {
  const ax = Math.abs(x);
  if (ax !== 0 && (ax >= 10000 || ax < 0.01)) return x.toExponential(0);
  const s = String(Math.round(x * 1000) / 1000);
  return s === "-0" ? "0" : s;
}

function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (hi <= lo) return [lo];
  const span = hi - lo;
  const step0 = span / Math.max(count - 1, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const mult of [1, 2, 2.5, 5, 10]) {
    if (mag * mult >= step0) {
      step = mag * mult;
      break;
    }
  }
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.floor(Math.log10(lo)); e <= Math.ceil(Math.log10(hi)); e++) {
    const v = Math.pow(10, e);
    if (v >= lo / 1.0001 && v <= hi * 1.0001) ticks.push(v);
  }
  return ticks.length >= 2 ? ticks : [lo, hi];
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderFigure(spec: FigureSpec): string {
  const series = spec.series.filter((s) => s.points.length > 0);
  if (series.length === 0) {
    throw new Error(`no data: figure '${spec.title}' has no points to draw`);
  }
  const allX = series.flatMap((s) => s.points.map((p) => p.x));
  let allY = series.flatMap((s) =>
    s.points.flatMap((p) => [p.y - p.halfWidth, p.y + p.halfWidth]),
  );
  if (spec.logY) {
    allY = allY.filter((y) => y > 0);
    if (allY.length === 0) {
      throw new Error(`log scale needs positive data in '${spec.title}'`);
    }
  }
  let xLo = Math.min(...allX);
  let xHi = Math.max(...allX);
  let yLo = Math.min(...allY);
  let yHi = Math.max(...allY);
  if (xHi === xLo) {
    xLo -= 1;
    xHi += 1;
  }
  if (yHi === yLo) {
    yLo -= yLo !== 0 ? Math.abs(yLo) * 0.5 : 1;
    yHi += yHi !== 0 ? Math.abs(yHi) * 0.5 : 1;
  }
  if (!spec.logY) {
    const pad = (yHi - yLo) * 0.06;
    yLo -= pad;
    yHi += pad;
  }

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo)) * plotW;
  const sy = (y: number) => {
    const t = spec.logY
      ? (Math.log10(y) - Math.log10(yLo)) / (Math.log10(yHi) - Math.log10(yLo))
      : (y - yLo) / (yHi - yLo);
    return MARGIN.top + plotH - t * plotH;
  };

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
      `font-family="Helvetica, Arial, sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15" ` +
      `font-weight="bold">${esc(spec.title)}</text>`,
  );

  const yTicks = spec.logY ? logTicks(yLo, yHi) : niceTicks(yLo, yHi);
  for (const t of yTicks) {
    const y = sy(t);
    parts.push(
      `<line x1="${fmt(MARGIN.left)}" y1="${fmt(y)}" x2="${fmt(WIDTH - MARGIN.right)}" ` +
        `y2="${fmt(y)}" stroke="#dddddd" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${fmt(MARGIN.left - 8)}" y="${fmt(y + 4)}" text-anchor="end">` +
        `${esc(fmtTick(t))}</text>`,
    );
  }
  const xTicks = niceTicks(xLo, xHi, 8);
  for (const t of xTicks) {
    const x = sx(t);
    parts.push(
      `<line x1="${fmt(x)}" y1="${fmt(MARGIN.top + plotH)}" x2="${fmt(x)}" ` +
        `y2="${fmt(MARGIN.top + plotH + 5)}" stroke="#333333"/>`,
    );
    parts.push(
      `<text x="${fmt(x)}" y="${fmt(MARGIN.top + plotH + 20)}" text-anchor="middle">` +
        `${esc(fmtTick(t))}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" ` +
      `fill="none" stroke="#333333"/>`,
  );
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 46}" text-anchor="middle">` +
      `${esc(spec.xLabel)}</text>`,
  );
  parts.push(
    `<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">${esc(spec.yLabel)}</text>`,
  );

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const pts = [...s.points].sort((a, b) => a.x - b.x);
    if (s.band) {
      const upper = pts.map((p) => `${fmt(sx(p.x))},${fmt(sy(clampY(p.y + p.halfWidth, yLo, yHi, spec.logY)))}`);
      const lower = [...pts]
        .reverse()
        .map((p) => `${fmt(sx(p.x))},${fmt(sy(clampY(p.y - p.halfWidth, yLo, yHi, spec.logY)))}`);
      parts.push(
        `<polygon points="${upper.join(" ")} ${lower.join(" ")}" fill="${color}" ` +
          `opacity="0.15" stroke="none"/>`,
      );
    }
    const path = pts
      .map((p, j) => `${j === 0 ? "M" : "L"}${fmt(sx(p.x))} ${fmt(sy(clampY(p.y, yLo, yHi, spec.logY)))}`)
      .join(" ");
    const dash = s.dashed ? ` stroke-dasharray="6 4"` : "";
    parts.push(
      `<path d="${path}" fill="none" stroke="${color}" stroke-width="1.8"${dash}/>`,
    );
    for (const p of pts) {
      parts.push(
        `<circle cx="${fmt(sx(p.x))}" cy="${fmt(sy(clampY(p.y, yLo, yHi, spec.logY)))}" r="2.6" fill="${color}"/>`,
      );
    }
  });

  const legendY = HEIGHT - 28;
  let legendX = MARGIN.left;
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const dash = s.dashed ? ` stroke-dasharray="6 4"` : "";
    parts.push(
      `<line x1="${fmt(legendX)}" y1="${legendY - 4}" x2="${fmt(legendX + 22)}" ` +
        `y2="${legendY - 4}" stroke="${color}" stroke-width="1.8"${dash}/>`,
    );
    parts.push(
      `<text x="${fmt(legendX + 27)}" y="${legendY}">${esc(s.label)}</text>`,
    );
    legendX += 34 + 7 * s.label.length + 14;
  });

  if (spec.footer) {
    parts.push(
      `<text x="${WIDTH - MARGIN.right}" y="${HEIGHT - 8}" text-anchor="end" ` +
        `font-size="9" fill="#888888">${esc(spec.footer)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

function clampY(y: number, lo: number, hi: number, logY?: boolean): number {
  if (logY && y <= 0) return lo;
  return Math.min(Math.max(y, lo), hi);
}

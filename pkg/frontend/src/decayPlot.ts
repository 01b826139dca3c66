/** Log-log decay plot: scatter, fitted line, dashed theoretical guides.
 *
 * The annotated slope is the same least-squares fit exposed to callers, so
 * rendering can never disagree with the reported numbers.
 */

import { writeFileSync } from 'fs';

import { DecayRow, RowFilter, SchemaError, filterDecayRows, readDecayCsv } from './csv.js';
import { fitLogLogSlope } from './fit.js';

export interface DecayPlotSpec {
  inputPaths: string[];
  filter: RowFilter;
  referenceSlopes: number[];
  outputPath: string;
  useScaledValues?: boolean;
  width?: number;
  height?: number;
}

export interface DecayPlotResult {
  svg: string;
  fittedSlope: number;
  annotatedSlope: string;
  rowCount: number;
}

const MARGIN = { top: 24, right: 24, bottom: 44, left: 60 };

function collectRows(spec: DecayPlotSpec): DecayRow[] {
  const rows: DecayRow[] = [];
  for (const path of spec.inputPaths) {
    rows.push(...readDecayCsv(path));
  }
  const selected = filterDecayRows(rows, spec.filter);
  if (selected.length === 0) {
    throw new SchemaError('filter selected no rows');
  }
  return selected.sort((a, b) => a.t - b.t);
}

function fmt(value: number): string {
  return value.toPrecision(6).replace(/\.?0+$/, '');
}

export function renderDecayPlot(spec: DecayPlotSpec): DecayPlotResult {
  const rows = collectRows(spec);
  const width = spec.width ?? 640;
  const height = spec.height ?? 440;
  const innerW = width - MARGIN.left - MARGIN.right;
  const innerH = height - MARGIN.top - MARGIN.bottom;

  const values = rows.map((r) => (spec.useScaledValues ? r.scaledValue : r.rawNorm));
  const ts = rows.map((r) => r.t);
  const fit = fitLogLogSlope(ts, values);
  const annotatedSlope = fit.slope.toFixed(2);

  const positive = rows
    .map((r, i) => [ts[i], values[i]] as const)
    .filter(([t, v]) => t > 0 && v > 0);
  const lts = positive.map(([t]) => Math.log10(t));
  const lvs = positive.map(([, v]) => Math.log10(v));
  const tMin = Math.min(...lts);
  const tMax = Math.max(...lts);
  const vMin = Math.min(...lvs);
  const vMax = Math.max(...lvs);
  const padV = 0.05 * Math.max(vMax - vMin, 1e-12);

  const sx = (lt: number) =>
    MARGIN.left + ((lt - tMin) / Math.max(tMax - tMin, 1e-12)) * innerW;
  const sy = (lv: number) =>
    MARGIN.top + ((vMax + padV - lv) / Math.max(vMax - vMin + 2 * padV, 1e-12)) * innerH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
  );

  // axes
  parts.push(
    `<line x1="${MARGIN.left}" y1="${MARGIN.top + innerH}" x2="${MARGIN.left + innerW}" y2="${MARGIN.top + innerH}" stroke="black"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${MARGIN.top + innerH}" stroke="black"/>`,
    `<text x="${MARGIN.left + innerW / 2}" y="${height - 8}" text-anchor="middle" font-size="13">log10 t</text>`,
    `<text x="14" y="${MARGIN.top + innerH / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 14 ${MARGIN.top + innerH / 2})">log10 value</text>`,
  );
  for (const lt of ticks(tMin, tMax)) {
    parts.push(
      `<line x1="${sx(lt)}" y1="${MARGIN.top + innerH}" x2="${sx(lt)}" y2="${MARGIN.top + innerH + 5}" stroke="black"/>`,
      `<text x="${sx(lt)}" y="${MARGIN.top + innerH + 18}" text-anchor="middle" font-size="11">${fmt(lt)}</text>`,
    );
  }
  for (const lv of ticks(vMin, vMax)) {
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${sy(lv)}" x2="${MARGIN.left}" y2="${sy(lv)}" stroke="black"/>`,
      `<text x="${MARGIN.left - 8}" y="${sy(lv) + 4}" text-anchor="end" font-size="11">${fmt(lv)}</text>`,
    );
  }

  // dashed theoretical guides through the data midpoint
  const midT = (tMin + tMax) / 2;
  const midV = (vMin + vMax) / 2;
  for (const slope of spec.referenceSlopes) {
    const y0 = midV + slope * (tMin - midT);
    const y1 = midV + slope * (tMax - midT);
    parts.push(
      `<line x1="${sx(tMin)}" y1="${sy(y0)}" x2="${sx(tMax)}" y2="${sy(y1)}" stroke="gray" stroke-dasharray="6 4"/>`,
      `<text x="${sx(tMax) - 4}" y="${sy(y1) - 6}" text-anchor="end" font-size="11" fill="gray">guide ${slope.toFixed(2)}</text>`,
    );
  }

  // fitted line in natural log coordinates mapped to log10
  const l10 = Math.log(10);
  const fy = (lt: number) => (fit.intercept + fit.slope * (lt * l10)) / l10;
  parts.push(
    `<line x1="${sx(tMin)}" y1="${sy(fy(tMin))}" x2="${sx(tMax)}" y2="${sy(fy(tMax))}" stroke="crimson" stroke-width="1.5"/>`,
  );

  for (const [t, v] of positive) {
    parts.push(
      `<circle cx="${sx(Math.log10(t))}" cy="${sy(Math.log10(v))}" r="3" fill="steelblue"/>`,
    );
  }

  const labelText = spec.filter.label ?? rows[0].label;
  parts.push(
    `<text x="${MARGIN.left + 8}" y="${MARGIN.top + 14}" font-size="13">${labelText}: slope = ${annotatedSlope}</text>`,
    '</svg>',
  );

  return {
    svg: parts.join('\n'),
    fittedSlope: fit.slope,
    annotatedSlope,
    rowCount: rows.length,
  };
}

function ticks(lo: number, hi: number): number[] {
  const span = Math.max(hi - lo, 1e-12);
  const out: number[] = [];
  for (let i = 0; i <= 4; i += 1) out.push(lo + (span * i) / 4);
  return out;
}

export function writeDecayPlot(spec: DecayPlotSpec): DecayPlotResult {
  const result = renderDecayPlot(spec);
  writeFileSync(spec.outputPath, result.svg);
  return result;
}

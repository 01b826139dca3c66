/** Profile overlay at a fixed time: two field curves plus a residual inset. */

import { writeFileSync } from 'fs';

import { FieldRow, SchemaError, readFieldCsv } from './csv.js';

export interface OverlayPlotSpec {
  inputPaths: string[];
  time: number;
  labels: [string, string];
  outputPath: string;
  width?: number;
  height?: number;
}

export interface OverlayPlotResult {
  svg: string;
  maxResidual: number;
  pointCount: number;
}

const REL_TOL = 1e-9;

function curveAt(rows: FieldRow[], label: string, time: number): FieldRow[] {
  const labeled = rows.filter((r) => r.label === label);
  if (labeled.length === 0) {
    throw new SchemaError(`no rows with label ${JSON.stringify(label)}`);
  }
  const matching = labeled.filter(
    (r) => Math.abs(r.t - time) <= REL_TOL * Math.max(1, Math.abs(time)),
  );
  if (matching.length === 0) {
    const available = [...new Set(labeled.map((r) => r.t))].sort((a, b) => a - b);
    throw new SchemaError(
      `no samples at t = ${time} for ${JSON.stringify(label)}; available times: ${available.join(', ')}`,
    );
  }
  return matching.sort((a, b) => a.x - b.x);
}

function polyline(
  points: Array<[number, number]>,
  sx: (x: number) => number,
  sy: (y: number) => number,
  stroke: string,
  dash = '',
): string {
  const path = points.map(([x, y]) => `${sx(x)},${sy(y)}`).join(' ');
  const dashAttr = dash ? ` stroke-dasharray="${dash}"` : '';
  return `<polyline points="${path}" fill="none" stroke="${stroke}"${dashAttr}/>`;
}

export function renderOverlayPlot(spec: OverlayPlotSpec): OverlayPlotResult {
  const rows: FieldRow[] = [];
  for (const path of spec.inputPaths) {
    rows.push(...readFieldCsv(path));
  }
  const [labelA, labelB] = spec.labels;
  const curveA = curveAt(rows, labelA, spec.time);
  const curveB = curveAt(rows, labelB, spec.time);
  if (curveA.length !== curveB.length) {
    throw new SchemaError(
      `curves have different sampling: ${curveA.length} vs ${curveB.length} points`,
    );
  }

  const width = spec.width ?? 640;
  const height = spec.height ?? 440;
  const margin = { top: 24, right: 24, bottom: 40, left: 56 };
  const innerW = width - margin.left - margin.right;
  const innerH = height - margin.top - margin.bottom;

  const xs = curveA.map((r) => r.x);
  const all = [...curveA.map((r) => r.value), ...curveB.map((r) => r.value)];
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const vMin = Math.min(...all);
  const vMax = Math.max(...all);
  const pad = 0.05 * Math.max(vMax - vMin, 1e-300);

  const sx = (x: number) => margin.left + ((x - xMin) / (xMax - xMin)) * innerW;
  const sy = (v: number) =>
    margin.top + ((vMax + pad - v) / (vMax - vMin + 2 * pad)) * innerH;

  const residual = curveA.map(
    (r, i) => [r.x, r.value - curveB[i].value] as [number, number],
  );
  const maxResidual = Math.max(...residual.map(([, d]) => Math.abs(d)));

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    `<line x1="${margin.left}" y1="${margin.top + innerH}" x2="${margin.left + innerW}" y2="${margin.top + innerH}" stroke="black"/>`,
    `<line x1="${margin.left}" y1="${margin.top}" x2="${margin.left}" y2="${margin.top + innerH}" stroke="black"/>`,
    polyline(curveA.map((r) => [r.x, r.value]), sx, sy, 'steelblue'),
    polyline(curveB.map((r) => [r.x, r.value]), sx, sy, 'crimson', '5 3'),
    `<text x="${margin.left + 8}" y="${margin.top + 14}" font-size="13">${labelA} vs ${labelB} at t = ${spec.time}</text>`,
  );

  // residual inset, upper right quadrant
  const inset = {
    left: margin.left + innerW * 0.58,
    top: margin.top + innerH * 0.08,
    w: innerW * 0.38,
    h: innerH * 0.3,
  };
  const rMax = Math.max(maxResidual, 1e-300);
  const rx = (x: number) => inset.left + ((x - xMin) / (xMax - xMin)) * inset.w;
  const ry = (d: number) => inset.top + ((rMax - d) / (2 * rMax)) * inset.h;
  parts.push(
    `<rect x="${inset.left}" y="${inset.top}" width="${inset.w}" height="${inset.h}" fill="none" stroke="gray"/>`,
    polyline(residual, rx, ry, 'darkgreen'),
    `<text x="${inset.left + 4}" y="${inset.top + 12}" font-size="10" fill="gray">residual (max ${maxResidual.toExponential(2)})</text>`,
    '</svg>',
  );

  return { svg: parts.join('\n'), maxResidual, pointCount: curveA.length };
}

export function writeOverlayPlot(spec: OverlayPlotSpec): OverlayPlotResult {
  const result = renderOverlayPlot(spec);
  writeFileSync(spec.outputPath, result.svg);
  return result;
}

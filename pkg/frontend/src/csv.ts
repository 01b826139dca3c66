/** Readers for the two CSV artifact schemas produced by the simulation CLI. */

import { readFileSync } from 'fs';

export const DECAY_HEADER = [
  'experiment', 'label', 't', 'p',
  'raw_norm', 'scale_exponent', 'log_factor', 'scaled_value',
] as const;

export const FIELD_HEADER = ['experiment', 'label', 't', 'x', 'value'] as const;

export interface DecayRow {
  experiment: string;
  label: string;
  t: number;
  p: number;
  rawNorm: number;
  scaleExponent: number;
  logFactor: string;
  scaledValue: number;
}

export interface FieldRow {
  experiment: string;
  label: string;
  t: number;
  x: number;
  value: number;
}

export class SchemaError extends Error {}

function parseNumber(token: string, path: string, line: number): number {
  if (token === 'inf') return Infinity;
  const value = Number(token);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`${path}:${line}: non-numeric field ${JSON.stringify(token)}`);
  }
  return value;
}

function splitCsv(text: string): string[][] {
  return text
    .split(/\r?\n/)
    .filter((line) => line.length > 0)
    .map((line) => line.split(','));
}

export function readDecayCsv(path: string): DecayRow[] {
  const lines = splitCsv(readFileSync(path, 'utf8'));
  if (lines.length === 0 || lines[0].join(',') !== DECAY_HEADER.join(',')) {
    throw new SchemaError(
      `${path}: expected decay schema header "${DECAY_HEADER.join(',')}"`,
    );
  }
  return lines.slice(1).map((cells, i) => {
    if (cells.length !== DECAY_HEADER.length) {
      throw new SchemaError(`${path}:${i + 2}: expected ${DECAY_HEADER.length} fields`);
    }
    return {
      experiment: cells[0],
      label: cells[1],
      t: parseNumber(cells[2], path, i + 2),
      p: parseNumber(cells[3], path, i + 2),
      rawNorm: parseNumber(cells[4], path, i + 2),
      scaleExponent: parseNumber(cells[5], path, i + 2),
      logFactor: cells[6],
      scaledValue: parseNumber(cells[7], path, i + 2),
    };
  });
}

export function readFieldCsv(path: string): FieldRow[] {
  const lines = splitCsv(readFileSync(path, 'utf8'));
  if (lines.length === 0 || lines[0].join(',') !== FIELD_HEADER.join(',')) {
    throw new SchemaError(
      `${path}: expected field schema header "${FIELD_HEADER.join(',')}"`,
    );
  }
  return lines.slice(1).map((cells, i) => {
    if (cells.length !== FIELD_HEADER.length) {
      throw new SchemaError(`${path}:${i + 2}: expected ${FIELD_HEADER.length} fields`);
    }
    return {
      experiment: cells[0],
      label: cells[1],
      t: parseNumber(cells[2], path, i + 2),
      x: parseNumber(cells[3], path, i + 2),
      value: parseNumber(cells[4], path, i + 2),
    };
  });
}

export interface RowFilter {
  experiment?: string;
  label?: string;
  p?: number;
}

export function filterDecayRows(rows: DecayRow[], filter: RowFilter): DecayRow[] {
  return rows.filter(
    (r) =>
      (filter.experiment === undefined || r.experiment === filter.experiment) &&
      (filter.label === undefined || r.label === filter.label) &&
      (filter.p === undefined || r.p === filter.p),
  );
}

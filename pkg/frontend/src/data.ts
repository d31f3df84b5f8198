/** Row derivation: bind the node table to keys, coordinates and labels. */

import { columnIndex } from './csv.js';
import type { Bundle } from './types.js';

export interface NodeRow {
  key: string;
  label: string;
  lat: number | null;
  lon: number | null;
  cells: Record<string, string>;
}

export function nodeRows(bundle: Bundle): NodeRow[] {
  const table = bundle.nodes;
  const ref = bundle.doc.data.nodes;
  const keyIdx = columnIndex(table, ref.key_field ?? 'sbi_key');
  const labelIdx = ref.label_field ? columnIndex(table, ref.label_field) : -1;
  const latIdx = ref.lat_field ? columnIndex(table, ref.lat_field) : -1;
  const lonIdx = ref.lon_field ? columnIndex(table, ref.lon_field) : -1;

  return table.rows.map((row) => {
    const cells: Record<string, string> = {};
    table.header.forEach((name, i) => {
      cells[name] = row[i] ?? '';
    });
    return {
      key: row[keyIdx] ?? '',
      label: labelIdx >= 0 ? row[labelIdx] ?? '' : row[keyIdx] ?? '',
      lat: latIdx >= 0 ? parseCoord(row[latIdx]) : null,
      lon: lonIdx >= 0 ? parseCoord(row[lonIdx]) : null,
      cells,
    };
  });
}

/** Raw micro-degree integers are scaled the same way the generator scales them. */
function parseCoord(cell: string | undefined): number | null {
  if (cell === undefined || cell.trim() === '') return null;
  const value = Number(cell);
  if (!Number.isFinite(value)) return null;
  return Math.abs(value) > 1000 ? value / 1e6 : value;
}

export function filterRows(rows: NodeRow[], keys: ReadonlySet<string> | null): NodeRow[] {
  if (keys === null) return rows;
  return rows.filter((r) => keys.has(r.key));
}

export function numericColumn(rows: NodeRow[], field: string): number[] {
  return rows.map((r) => Number(r.cells[field] ?? NaN)).filter((v) => Number.isFinite(v));
}

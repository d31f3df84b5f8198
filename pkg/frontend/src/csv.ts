/** CSV reader for bundle tables: quoted cells, doubled quotes, trimmed bare cells. */

import type { Table } from './types.js';

export function parseCsv(text: string): Table {
  const records: string[][] = [];
  let cells: string[] = [];
  let buf = '';
  let quoted = false;
  let sawQuote = false;

  const endCell = () => {
    cells.push(sawQuote ? buf : buf.trim());
    buf = '';
    sawQuote = false;
  };
  const endRecord = () => {
    endCell();
    if (!(cells.length === 1 && cells[0] === '')) records.push(cells);
    cells = [];
  };

  for (let i = 0; i < text.length; i++) {
    const ch = text[i];
    if (quoted) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          buf += '"';
          i++;
        } else {
          quoted = false;
        }
      } else {
        buf += ch;
      }
      continue;
    }
    if (ch === '"') {
      quoted = true;
      sawQuote = true;
    } else if (ch === ',') {
      endCell();
    } else if (ch === '\n') {
      endRecord();
    } else if (ch !== '\r') {
      buf += ch;
    }
  }
  if (quoted) throw new Error('unterminated quoted cell');
  if (buf !== '' || cells.length > 0 || sawQuote) endRecord();

  const header = records.shift() ?? [];
  for (const row of records) {
    if (row.length !== header.length) {
      throw new Error(`row has ${row.length} cells, expected ${header.length}`);
    }
  }
  return { header, rows: records };
}

export function columnIndex(table: Table, name: string): number {
  const idx = table.header.indexOf(name);
  if (idx < 0) throw new Error(`column '${name}' not found`);
  return idx;
}

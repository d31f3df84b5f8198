/**
 * Pure SVG renderers.  Every chart is a string-producing function of its
 * (already filtered) rows, so snapshots and re-renders are trivially equal.
 * Interactive marks carry data-object / data-label / data-keys attributes;
 * the DOM layer turns clicks on them into selections.
 */

import type { NodeRow } from './data.js';
import { numericColumn } from './data.js';
import {
  CATEGORICAL,
  HIGHLIGHT_COLOR,
  categoricalColor,
  extent,
  fmt,
  linearScale,
  quantile,
  sequentialColor,
} from './scale.js';
import type { InteractiveObject, PathEntry } from './types.js';

export const WIDTH = 420;
export const HEIGHT = 260;
const PAD = { top: 16, right: 14, bottom: 34, left: 44 };

export function esc(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function svgOpen(): string {
  return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" xmlns="http://www.w3.org/2000/svg">`;
}

function markAttrs(objectId: string, label: string, keys: string[]): string {
  const packed = keys.map(encodeURIComponent).join(',');
  return `data-object="${esc(objectId)}" data-label="${esc(label)}" data-keys="${packed}"`;
}

export function emptyNote(message: string): string {
  return `${svgOpen()}<text x="${WIDTH / 2}" y="${HEIGHT / 2}" text-anchor="middle" class="empty-note">${esc(message)}</text></svg>`;
}

export function histogram(obj: InteractiveObject, rows: NodeRow[]): string {
  const field = obj.measure.field;
  const values = numericColumn(rows, field);
  if (values.length === 0) return emptyNote('no rows to plot');

  const byValue = new Map<number, string[]>();
  for (const row of rows) {
    const v = Number(row.cells[field]);
    if (!Number.isFinite(v)) continue;
    const keys = byValue.get(v) ?? [];
    keys.push(row.key);
    byValue.set(v, keys);
  }
  const bins = [...byValue.entries()].sort((a, b) => a[0] - b[0]);
  const [lo, hi] = extent(values);
  const x = linearScale([lo, hi], [PAD.left, WIDTH - PAD.right]);
  const maxCount = Math.max(...bins.map(([, keys]) => keys.length));
  const y = linearScale([0, maxCount], [HEIGHT - PAD.bottom, PAD.top]);
  const barW = Math.max(6, (WIDTH - PAD.left - PAD.right) / Math.max(bins.length, 1) - 6);

  const parts = [svgOpen(), axisBottom(lo, hi), axisLeft(0, maxCount)];
  bins.forEach(([value, keys], i) => {
    const cx = bins.length === 1 ? (PAD.left + WIDTH - PAD.right) / 2 : x(value);
    const top = y(keys.length);
    parts.push(
      `<rect class="mark" x="${fmt(cx - barW / 2)}" y="${fmt(top)}" width="${fmt(barW)}" ` +
        `height="${fmt(HEIGHT - PAD.bottom - top)}" fill="${CATEGORICAL[0]}" ` +
        `${markAttrs(obj.id, `${field} = ${fmt(value)}`, keys)}>` +
        `<title>${esc(`${fmt(value)}: ${keys.length}`)}</title></rect>`,
    );
  });
  const ref = obj.style.reference_line;
  if (ref !== undefined && Number.isFinite(ref)) {
    const rx = x(Math.max(lo, Math.min(hi, ref)));
    parts.push(
      `<line class="reference-line" x1="${fmt(rx)}" x2="${fmt(rx)}" y1="${PAD.top}" ` +
        `y2="${HEIGHT - PAD.bottom}" stroke="#d4402a" stroke-dasharray="4 3"/>`,
      `<text x="${fmt(rx + 4)}" y="${PAD.top + 10}" class="reference-label">média ${fmt(ref)}</text>`,
    );
  }
  parts.push('</svg>');
  return parts.join('');
}

export function barChart(obj: InteractiveObject, rows: NodeRow[]): string {
  const field = obj.measure.field;
  let ranked = rows
    .map((row) => ({ row, value: Number(row.cells[field]) }))
    .filter((e) => Number.isFinite(e.value));
  if (ranked.length === 0) return emptyNote('no rows to plot');
  const ascending = obj.style.order !== 'descending';
  ranked.sort((a, b) => (a.value - b.value || (a.row.key < b.row.key ? -1 : 1)) * (ascending ? 1 : -1));
  if (obj.style.limit) ranked = ranked.slice(0, obj.style.limit);

  const maxV = Math.max(...ranked.map((e) => e.value), 0);
  const x = linearScale([0, maxV], [0, WIDTH - PAD.left - PAD.right - 70]);
  const rowH = Math.min(26, (HEIGHT - PAD.top - 8) / ranked.length);
  const parts = [svgOpen()];
  ranked.forEach((entry, i) => {
    const yPos = PAD.top + i * rowH;
    parts.push(
      `<rect class="mark" x="${PAD.left + 70}" y="${fmt(yPos)}" width="${fmt(Math.max(1, x(entry.value)))}" ` +
        `height="${fmt(rowH - 4)}" fill="${CATEGORICAL[0]}" ` +
        `${markAttrs(obj.id, entry.row.label, [entry.row.key])}>` +
        `<title>${esc(`${entry.row.label}: ${fmt(entry.value)}`)}</title></rect>`,
      `<text x="${PAD.left + 64}" y="${fmt(yPos + rowH / 2 + 3)}" text-anchor="end" class="bar-label">` +
        `${esc(truncate(entry.row.label, 14))}</text>`,
      `<text x="${fmt(PAD.left + 74 + x(entry.value))}" y="${fmt(yPos + rowH / 2 + 3)}" class="bar-value">` +
        `${fmt(entry.value)}</text>`,
    );
  });
  parts.push('</svg>');
  return parts.join('');
}

export function scatter(obj: InteractiveObject, rows: NodeRow[]): string {
  const yField = obj.measure.field;
  const xField = obj.style.x_field ?? yField;
  const points = rows
    .map((row) => ({ row, x: Number(row.cells[xField]), y: Number(row.cells[yField]) }))
    .filter((p) => Number.isFinite(p.x) && Number.isFinite(p.y));
  if (points.length === 0) return emptyNote('no rows to plot');

  const x = linearScale(pad(extent(points.map((p) => p.x))), [PAD.left, WIDTH - PAD.right]);
  const y = linearScale(pad(extent(points.map((p) => p.y))), [HEIGHT - PAD.bottom, PAD.top]);
  const parts = [
    svgOpen(),
    axisBottom(x.domain[0], x.domain[1], xField),
    axisLeft(y.domain[0], y.domain[1], yField),
  ];
  for (const p of points) {
    parts.push(
      `<circle class="mark" cx="${fmt(x(p.x))}" cy="${fmt(y(p.y))}" r="5" fill="${CATEGORICAL[0]}" ` +
        `fill-opacity="0.75" ${markAttrs(obj.id, p.row.label, [p.row.key])}>` +
        `<title>${esc(`${p.row.label} (${fmt(p.x)}, ${fmt(p.y)})`)}</title></circle>`,
    );
  }
  parts.push('</svg>');
  return parts.join('');
}

interface Projected {
  row: NodeRow;
  px: number;
  py: number;
}

/** Equirectangular projection over the rows' own bounding box; no tiles. */
function project(rows: NodeRow[]): Projected[] {
  const located = rows.filter((r) => r.lat !== null && r.lon !== null);
  const lons = located.map((r) => r.lon as number);
  const lats = located.map((r) => r.lat as number);
  const x = linearScale(pad(extent(lons)), [PAD.left, WIDTH - PAD.right]);
  const y = linearScale(pad(extent(lats)), [HEIGHT - PAD.bottom, PAD.top]);
  return located.map((row) => ({ row, px: x(row.lon as number), py: y(row.lat as number) }));
}

export function mapPoints(obj: InteractiveObject, rows: NodeRow[]): string {
  const colorBy = obj.style.color_by ?? obj.measure.field;
  const projected = project(rows);
  if (projected.length === 0) return emptyNote('no located rows');

  const parts = [svgOpen(), `<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" class="map-bg"/>`];
  if (obj.style.palette === 'categorical') {
    const categories = [...new Set(projected.map((p) => p.row.cells[colorBy] ?? ''))].sort();
    const byCategory = new Map<string, string[]>();
    for (const p of projected) {
      const c = p.row.cells[colorBy] ?? '';
      byCategory.set(c, [...(byCategory.get(c) ?? []), p.row.key]);
    }
    for (const p of projected) {
      const category = p.row.cells[colorBy] ?? '';
      parts.push(
        `<circle class="mark" cx="${fmt(p.px)}" cy="${fmt(p.py)}" r="7" ` +
          `fill="${categoricalColor(category, categories)}" ` +
          `${markAttrs(obj.id, `${colorBy} = ${category}`, byCategory.get(category) ?? [])}>` +
          `<title>${esc(`${p.row.label} · ${colorBy} ${category}`)}</title></circle>`,
      );
    }
    parts.push(legend(categories, colorBy));
  } else {
    const values = projected.map((p) => Number(p.row.cells[colorBy] ?? NaN));
    const finite = values.filter(Number.isFinite);
    const [lo, hi] = extent(finite);
    const cut = obj.style.highlight ? quantile(finite, obj.style.highlight.top_quantile) : Infinity;
    projected.forEach((p, i) => {
      const v = values[i] ?? NaN;
      const highlighted = Number.isFinite(v) && v >= cut;
      const fill = highlighted ? HIGHLIGHT_COLOR : sequentialColor(v, lo, hi);
      parts.push(
        `<circle class="mark${highlighted ? ' highlight' : ''}" cx="${fmt(p.px)}" cy="${fmt(p.py)}" ` +
          `r="${highlighted ? 9 : 6}" fill="${fill}" ` +
          `${markAttrs(obj.id, p.row.label, [p.row.key])}>` +
          `<title>${esc(`${p.row.label}: ${fmt(v)}`)}</title></circle>`,
      );
    });
  }
  parts.push('</svg>');
  return parts.join('');
}

export function mapPath(obj: InteractiveObject, rows: NodeRow[], entry: PathEntry | undefined): string {
  const projected = project(rows);
  if (projected.length === 0) return emptyNote('no located rows');
  const byKey = new Map(projected.map((p) => [p.row.key, p]));
  const parts = [svgOpen(), `<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" class="map-bg"/>`];
  for (const p of projected) {
    parts.push(
      `<circle cx="${fmt(p.px)}" cy="${fmt(p.py)}" r="4" fill="#b0b7c3">` +
        `<title>${esc(p.row.label)}</title></circle>`,
    );
  }
  if (entry && entry.path.every((k) => byKey.has(k))) {
    const pts = entry.path.map((k) => byKey.get(k)!);
    const line = pts.map((p) => `${fmt(p.px)},${fmt(p.py)}`).join(' ');
    parts.push(
      `<polyline class="route" points="${line}" fill="none" stroke="${HIGHLIGHT_COLOR}" stroke-width="3"/>`,
    );
    for (const p of pts) {
      parts.push(
        `<circle class="mark" cx="${fmt(p.px)}" cy="${fmt(p.py)}" r="6" fill="${HIGHLIGHT_COLOR}" ` +
          `${markAttrs(obj.id, `rota ${entry.path[0]} → ${entry.path[entry.path.length - 1]}`, entry.path)}>` +
          `<title>${esc(p.row.label)}</title></circle>`,
      );
    }
    parts.push(
      `<text x="${PAD.left}" y="${HEIGHT - 10}" class="route-label">comprimento ${fmt(entry.length)}</text>`,
    );
  } else {
    parts.push(
      `<text x="${PAD.left}" y="${HEIGHT - 10}" class="route-label">rota fora da seleção atual</text>`,
    );
  }
  parts.push('</svg>');
  return parts.join('');
}

/** Bar chart over precomputed path entries (longest minimum paths). */
export function pathBars(obj: InteractiveObject, entries: PathEntry[]): string {
  if (entries.length === 0) return emptyNote('no paths');
  const maxV = Math.max(...entries.map((e) => e.length));
  const x = linearScale([0, maxV], [0, WIDTH - PAD.left - PAD.right - 90]);
  const rowH = Math.min(26, (HEIGHT - PAD.top - 8) / entries.length);
  const parts = [svgOpen()];
  entries.forEach((entry, i) => {
    const yPos = PAD.top + i * rowH;
    const name = `${entry.path[0]} → ${entry.path[entry.path.length - 1]}`;
    parts.push(
      `<rect class="mark" x="${PAD.left + 90}" y="${fmt(yPos)}" width="${fmt(Math.max(1, x(entry.length)))}" ` +
        `height="${fmt(rowH - 4)}" fill="${CATEGORICAL[0]}" ` +
        `${markAttrs(obj.id, `rota ${name}`, entry.path)}>` +
        `<title>${esc(`${name}: ${fmt(entry.length)}`)}</title></rect>`,
      `<text x="${PAD.left + 84}" y="${fmt(yPos + rowH / 2 + 3)}" text-anchor="end" class="bar-label">${esc(name)}</text>`,
      `<text x="${fmt(PAD.left + 94 + x(entry.length))}" y="${fmt(yPos + rowH / 2 + 3)}" class="bar-value">${fmt(entry.length)}</text>`,
    );
  });
  parts.push('</svg>');
  return parts.join('');
}

function pad([lo, hi]: [number, number]): [number, number] {
  if (lo === hi) return [lo - 1, hi + 1];
  const m = (hi - lo) * 0.06;
  return [lo - m, hi + m];
}

function truncate(text: string, n: number): string {
  return text.length > n ? text.slice(0, n - 1) + '…' : text;
}

function axisBottom(lo: number, hi: number, label = ''): string {
  return (
    `<line x1="${PAD.left}" x2="${WIDTH - PAD.right}" y1="${HEIGHT - PAD.bottom}" y2="${HEIGHT - PAD.bottom}" class="axis"/>` +
    `<text x="${PAD.left}" y="${HEIGHT - PAD.bottom + 14}" class="tick">${fmt(lo)}</text>` +
    `<text x="${WIDTH - PAD.right}" y="${HEIGHT - PAD.bottom + 14}" text-anchor="end" class="tick">${fmt(hi)}</text>` +
    (label
      ? `<text x="${(PAD.left + WIDTH - PAD.right) / 2}" y="${HEIGHT - 6}" text-anchor="middle" class="axis-label">${esc(label)}</text>`
      : '')
  );
}

function axisLeft(lo: number, hi: number, label = ''): string {
  return (
    `<line x1="${PAD.left}" x2="${PAD.left}" y1="${PAD.top}" y2="${HEIGHT - PAD.bottom}" class="axis"/>` +
    `<text x="${PAD.left - 4}" y="${HEIGHT - PAD.bottom}" text-anchor="end" class="tick">${fmt(lo)}</text>` +
    `<text x="${PAD.left - 4}" y="${PAD.top + 8}" text-anchor="end" class="tick">${fmt(hi)}</text>` +
    (label
      ? `<text transform="rotate(-90 12 ${HEIGHT / 2})" x="12" y="${HEIGHT / 2}" text-anchor="middle" class="axis-label">${esc(label)}</text>`
      : '')
  );
}

function legend(categories: string[], title: string): string {
  const items = categories
    .map(
      (c, i) =>
        `<circle cx="${WIDTH - 96}" cy="${PAD.top + 12 + i * 16}" r="5" fill="${categoricalColor(c, categories)}"/>` +
        `<text x="${WIDTH - 86}" y="${PAD.top + 16 + i * 16}" class="tick">${esc(`${c}`)}</text>`,
    )
    .join('');
  return `<text x="${WIDTH - 104}" y="${PAD.top}" class="tick legend-title">${esc(title)}</text>${items}`;
}

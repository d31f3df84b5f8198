/**
 * Bundle loading and the top-level render: a pure function from
 * (bundle, selection state) to an HTML string.  The DOM layer only swaps
 * innerHTML and forwards clicks, so a full re-render and an incremental
 * update are by construction the same thing.
 */

import { barChart, emptyNote, esc, histogram, mapPath, mapPoints, pathBars, scatter } from './charts.js';
import { parseCsv } from './csv.js';
import { filterRows, nodeRows } from './data.js';
import { activeFilters, effectiveKeys, type SelectionState } from './state.js';
import type { Bundle, DashboardDoc, InteractiveObject, MetricsDoc, PathEntry } from './types.js';

export interface BundleParts {
  dashboard: string;
  nodes?: string;
  edges?: string;
  metrics?: string;
}

export function loadBundleFromParts(parts: BundleParts): Bundle {
  const diagnostics: string[] = [];
  let doc: DashboardDoc | null = null;
  try {
    doc = JSON.parse(parts.dashboard) as DashboardDoc;
  } catch (err) {
    diagnostics.push(`dashboard.json does not parse: ${String(err)}`);
  }
  let nodes = { header: [] as string[], rows: [] as string[][] };
  let edges = { header: [] as string[], rows: [] as string[][] };
  let metrics: MetricsDoc = {};
  if (doc) {
    for (const [name, text] of [['nodes', parts.nodes], ['edges', parts.edges]] as const) {
      if (text === undefined) {
        diagnostics.push(`${name}.csv is missing`);
        continue;
      }
      try {
        const table = parseCsv(text);
        if (name === 'nodes') nodes = table;
        else edges = table;
      } catch (err) {
        diagnostics.push(`${name}.csv does not parse: ${String(err)}`);
      }
    }
    if (parts.metrics === undefined) {
      diagnostics.push('metrics.json is missing');
    } else {
      try {
        metrics = JSON.parse(parts.metrics) as MetricsDoc;
      } catch (err) {
        diagnostics.push(`metrics.json does not parse: ${String(err)}`);
      }
    }
    if (diagnostics.length === 0) {
      for (const [table, ref] of [
        [nodes, doc.data.nodes],
        [edges, doc.data.edges],
      ] as const) {
        for (const [key, value] of Object.entries(ref)) {
          if (key.endsWith('_field') && typeof value === 'string' && !table.header.includes(value)) {
            diagnostics.push(`binding ${key} = '${value}' does not resolve`);
          }
        }
      }
    }
  }
  return {
    doc: doc ?? emptyDoc(),
    nodes,
    edges,
    metrics,
    diagnostics,
  };
}

function emptyDoc(): DashboardDoc {
  return {
    version: '1',
    domain: 'Unknown',
    source: {},
    objects: [],
    data: { nodes: { file: 'nodes.csv' }, edges: { file: 'edges.csv' }, metrics: { file: 'metrics.json' } },
  };
}

export function render(bundle: Bundle, state: SelectionState): string {
  if (bundle.diagnostics.length > 0) {
    const items = bundle.diagnostics.map((d) => `<li>${esc(d)}</li>`).join('');
    return `<div class="diagnostics" data-panel="diagnostics"><h2>Não foi possível carregar o painel</h2><ul>${items}</ul></div>`;
  }
  if (bundle.doc.objects.length === 0) {
    return `<div class="empty-dashboard" data-panel="empty">Painel vazio: nenhum objeto interativo foi gerado.</div>`;
  }

  const keys = effectiveKeys(state);
  const rows = nodeRows(bundle);
  const visible = filterRows(rows, keys);
  const filters = activeFilters(state);

  const chips = filters
    .map(
      (f) =>
        `<button class="chip" data-action="clear-one" data-object="${esc(f.objectId)}">` +
        `${esc(f.label)} ✕</button>`,
    )
    .join('');
  const emptySelection = keys !== null && visible.length === 0;

  const header =
    `<header class="top">` +
    `<h1>${esc(bundle.doc.domain)} · painel de indicadores</h1>` +
    `<div class="filters">${chips}` +
    (filters.length > 0
      ? `<button class="chip clear-all" data-action="clear">limpar seleções</button>`
      : '') +
    `</div></header>` +
    (emptySelection
      ? `<div class="empty-hint" data-panel="empty-selection">Sem interseção: as seleções ativas não têm nós em comum.</div>`
      : '');

  const sections = bundle.doc.objects
    .map((obj) => section(obj, renderObject(obj, bundle, visible)))
    .join('');
  return `${header}<main class="grid">${sections}</main>`;
}

function section(obj: InteractiveObject, body: string): string {
  return (
    `<section class="card" data-object-id="${esc(obj.id)}">` +
    `<h2>${esc(obj.title)}</h2>${body}</section>`
  );
}

export function renderObject(
  obj: InteractiveObject,
  bundle: Bundle,
  visible: ReturnType<typeof filterRows>,
): string {
  try {
    switch (obj.viz) {
      case 'histogram':
        return histogram(obj, visible);
      case 'bar':
        return obj.data === 'metrics'
          ? pathBars(obj, visiblePaths(metricPaths(bundle, obj.measure.field), visible))
          : barChart(obj, visible);
      case 'scatter':
        return scatter(obj, visible);
      case 'map_points':
        return mapPoints(obj, visible);
      case 'map_path': {
        const entry = (bundle.metrics[obj.measure.field] ?? undefined) as PathEntry | undefined;
        return mapPath(obj, visible, entry);
      }
      default:
        return emptyNote(`unsupported visualization '${obj.viz as string}'`);
    }
  } catch (err) {
    return `<div class="error-card" data-error="${esc(obj.id)}">${esc(String(err))}</div>`;
  }
}

function metricPaths(bundle: Bundle, field: string): PathEntry[] {
  const value = bundle.metrics[field];
  if (Array.isArray(value)) return value as PathEntry[];
  return [];
}

/** Paths survive filtering only when every node on them is selected. */
function visiblePaths(entries: PathEntry[], visible: { key: string }[]): PathEntry[] {
  const keys = new Set(visible.map((r) => r.key));
  return entries.filter((e) => e.path.every((k) => keys.has(k)));
}

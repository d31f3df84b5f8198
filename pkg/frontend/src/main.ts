/** DOM bootstrap: fetch the bundle, keep selection state, delegate clicks. */

import { loadBundleFromParts, render } from './render.js';
import { EMPTY_STATE, applySelection, clearSelection, type SelectionState } from './state.js';
import type { Bundle } from './types.js';

async function fetchText(url: string): Promise<string | undefined> {
  try {
    const resp = await fetch(url);
    if (!resp.ok) return undefined;
    return await resp.text();
  } catch {
    return undefined;
  }
}

async function loadBundle(): Promise<Bundle> {
  const dashboard = await fetchText('/dashboard.json');
  if (dashboard === undefined) {
    return loadBundleFromParts({ dashboard: 'null' });
  }
  let files = { nodes: 'nodes.csv', edges: 'edges.csv', metrics: 'metrics.json' };
  try {
    const doc = JSON.parse(dashboard);
    files = {
      nodes: doc.data?.nodes?.file ?? files.nodes,
      edges: doc.data?.edges?.file ?? files.edges,
      metrics: doc.data?.metrics?.file ?? files.metrics,
    };
  } catch {
    // loadBundleFromParts will report the parse failure
  }
  const [nodes, edges, metrics] = await Promise.all([
    fetchText('/' + files.nodes),
    fetchText('/' + files.edges),
    fetchText('/' + files.metrics),
  ]);
  return loadBundleFromParts({ dashboard, nodes, edges, metrics });
}

function start(container: HTMLElement, bundle: Bundle): void {
  let state: SelectionState = EMPTY_STATE;

  const draw = () => {
    container.innerHTML = render(bundle, state);
  };

  container.addEventListener('click', (event) => {
    const target = (event.target as Element | null)?.closest(
      '[data-keys], [data-action]',
    ) as HTMLElement | null;
    if (!target) return;
    const action = target.getAttribute('data-action');
    if (action === 'clear') {
      state = clearSelection(state);
    } else if (action === 'clear-one') {
      state = clearSelection(state, target.getAttribute('data-object') ?? undefined);
    } else {
      const objectId = target.getAttribute('data-object');
      const packed = target.getAttribute('data-keys') ?? '';
      if (!objectId) return;
      const keys = packed === '' ? [] : packed.split(',').map(decodeURIComponent);
      state = applySelection(state, objectId, target.getAttribute('data-label') ?? '', keys);
    }
    draw();
  });

  draw();
}

document.addEventListener('DOMContentLoaded', async () => {
  const container = document.getElementById('app');
  if (!container) return;
  container.innerHTML = '<p class="loading">carregando painel…</p>';
  start(container, await loadBundle());
});

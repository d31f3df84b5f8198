/** Shapes of the bundle files the viewer consumes. */

export type Viz = 'histogram' | 'bar' | 'scatter' | 'map_points' | 'map_path';

export interface Measure {
  op: 'average' | 'sum' | 'count' | 'direct';
  field: string;
}

export interface StyleHints {
  reference_line?: number;
  x_field?: string;
  color_by?: string;
  palette?: 'categorical' | 'sequential';
  highlight?: { top_quantile: number };
  order?: 'ascending' | 'descending';
  limit?: number;
}

export interface InteractiveObject {
  id: string;
  title: string;
  viz: Viz;
  data: 'nodes' | 'edges' | 'metrics';
  dimension: { field: string } | null;
  measure: Measure;
  style: StyleHints;
}

export interface DataRef {
  file: string;
  key_field?: string;
  label_field?: string;
  lat_field?: string;
  lon_field?: string;
  source_field?: string;
  target_field?: string;
}

export interface DashboardDoc {
  version: string;
  domain: string;
  generated_at?: string;
  source: Record<string, string>;
  objects: InteractiveObject[];
  data: { nodes: DataRef; edges: DataRef; metrics: DataRef };
}

export interface Table {
  header: string[];
  rows: string[][];
}

export interface PathEntry {
  length: number;
  path: string[];
}

export interface MetricsDoc {
  [key: string]: unknown;
  diameter?: PathEntry;
  top_paths?: PathEntry[];
}

/** A fully loaded, binding-checked bundle. */
export interface Bundle {
  doc: DashboardDoc;
  nodes: Table;
  edges: Table;
  metrics: MetricsDoc;
  diagnostics: string[];
}

/** View models: API payloads reshaped for rendering. */

import type {
  CompareResponse,
  GraphSummary,
  Tally,
} from "./types.js";

export interface SummaryBadges {
  nodes: number | null;
  edges: number | null;
  directed: boolean | null;
  planar: boolean | null;
  connected: boolean | null;
}

export interface GraphSummaryVM {
  id: string;
  name: string;
  status: string;
  tags: string[];
  /** Server-rendered SVG, or null while the drawing is pending. */
  thumbnail: string | null;
  badges: SummaryBadges;
}

/** Built purely from the search payload; no follow-up requests needed. */
export function toSummaryVM(s: GraphSummary): GraphSummaryVM {
  return {
    id: s.id,
    name: s.name,
    status: s.status,
    tags: s.tags,
    thumbnail: s.has_image ? `/graphs/${s.id}/image.svg` : null,
    badges: {
      nodes: s.node_count,
      edges: s.edge_count,
      directed: s.directed,
      planar: s.is_planar,
      connected: s.is_connected,
    },
  };
}

/** Three visual states of the boolean comparison scale; maps 1:1 onto the
 * server's tally (shared by no graph / a subset / all graphs). */
export type ScaleState = Tally;

export interface CompareRowVM {
  property: string;
  values: Array<number | boolean | null>;
  scale?: ScaleState;
}

export interface CompareVM {
  ids: string[];
  rows: CompareRowVM[];
}

export function toCompareVM(response: CompareResponse): CompareVM {
  return {
    ids: response.ids,
    rows: response.rows.map((row) => ({
      property: row.property,
      values: response.ids.map((id) => row.values[id] ?? null),
      ...(row.tally !== undefined ? { scale: row.tally } : {}),
    })),
  };
}

/** Response fixtures in the documented API shapes.
 *
 * The compare fixtures reproduce the server's tallies for the canonical
 * pairs: K4 vs K5 (planar differs, both connected) and K4 vs C4 (both
 * planar, bipartiteness differs).
 */

import type { CompareResponse, GraphSummary } from "../src/types.js";

export const K4 = "01AAAAAAAAAAAAAAAAAAAAAAK4";
export const K5 = "01AAAAAAAAAAAAAAAAAAAAAAK5";
export const C4 = "01AAAAAAAAAAAAAAAAAAAAAAC4";

export const compareK4K5: CompareResponse = {
  ids: [K4, K5],
  rows: [
    { property: "directed", values: { [K4]: false, [K5]: false }, tally: "none" },
    { property: "edge_count", values: { [K4]: 6, [K5]: 10 } },
    { property: "is_acyclic", values: { [K4]: false, [K5]: false }, tally: "none" },
    { property: "is_bipartite", values: { [K4]: false, [K5]: false }, tally: "none" },
    { property: "is_connected", values: { [K4]: true, [K5]: true }, tally: "all" },
    { property: "is_planar", values: { [K4]: true, [K5]: false }, tally: "some" },
    { property: "node_count", values: { [K4]: 4, [K5]: 5 } },
    { property: "vertex_connectivity", values: { [K4]: 3, [K5]: 4 } },
  ],
};

export const compareK4C4: CompareResponse = {
  ids: [K4, C4],
  rows: [
    { property: "is_bipartite", values: { [K4]: false, [C4]: true }, tally: "some" },
    { property: "is_connected", values: { [K4]: true, [C4]: true }, tally: "all" },
    { property: "is_planar", values: { [K4]: true, [C4]: true }, tally: "all" },
    { property: "node_count", values: { [K4]: 4, [C4]: 4 } },
  ],
};

export function summary(over: Partial<GraphSummary> = {}): GraphSummary {
  return {
    id: K4,
    name: "K4",
    creator: "tester",
    uploaded_at: "2026-08-10T12:00:00+00:00",
    status: "analyzed",
    format: "gml",
    tags: ["demo"],
    node_count: 4,
    edge_count: 6,
    directed: false,
    is_planar: true,
    is_connected: true,
    has_image: true,
    ...over,
  };
}

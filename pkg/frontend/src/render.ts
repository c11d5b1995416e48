/** Pure HTML renderers. Everything here returns strings so the rendering
 * logic is testable without a browser; page modules attach the results to
 * the document and wire events. */

import type {
  GraphDetail,
  ImportFileResult,
  LossReportDoc,
} from "./types.js";
import type { CompareVM, GraphSummaryVM, ScaleState } from "./vm.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function badge(label: string, value: number | boolean | null): string {
  const shown =
    value === null ? "?" : typeof value === "boolean" ? (value ? "yes" : "no") : String(value);
  return `<span class="badge">${escapeHtml(label)}: ${escapeHtml(shown)}</span>`;
}

export function renderSummaryCard(vm: GraphSummaryVM): string {
  const thumb = vm.thumbnail
    ? `<img class="thumb" src="${escapeHtml(vm.thumbnail)}" alt="">`
    : `<div class="thumb placeholder">no image yet</div>`;
  const tags = vm.tags
    .map((t) => `<span class="tag">${escapeHtml(t)}</span>`)
    .join(" ");
  return `<a class="card" href="#/graphs/${escapeHtml(vm.id)}">
  ${thumb}
  <h3>${escapeHtml(vm.name)}</h3>
  <div class="tags">${tags}</div>
  <div class="badges">
    ${badge("n", vm.badges.nodes)} ${badge("m", vm.badges.edges)}
    ${badge("directed", vm.badges.directed)}
    ${badge("planar", vm.badges.planar)}
    ${badge("connected", vm.badges.connected)}
  </div>
  <div class="status">${escapeHtml(vm.status)}</div>
</a>`;
}

export function renderSummaryGrid(vms: GraphSummaryVM[], total: number): string {
  if (vms.length === 0) {
    return `<p class="empty">No graphs match the current criteria.</p>`;
  }
  const cards = vms.map(renderSummaryCard).join("\n");
  return `<p class="total">${total} match(es)</p>\n<div class="grid">${cards}</div>`;
}

const SCALE_GLYPHS: Record<ScaleState, string> = {
  none: "○", // empty circle: shared by no graph
  some: "◐", // half circle: shared by a subset
  all: "●", // full circle: shared by all graphs
};

export function renderScale(state: ScaleState): string {
  return `<span class="scale scale-${state}" title="${state}">${SCALE_GLYPHS[state]}</span>`;
}

function cell(value: number | boolean | null): string {
  if (value === null) return `<td class="unknown">?</td>`;
  if (typeof value === "boolean") return `<td>${value ? "yes" : "no"}</td>`;
  return `<td>${escapeHtml(String(value))}</td>`;
}

export function renderCompareTable(vm: CompareVM): string {
  const head = vm.ids
    .map((id) => `<th><a href="#/graphs/${escapeHtml(id)}">${escapeHtml(id.slice(-6))}</a></th>`)
    .join("");
  const rows = vm.rows
    .map((row) => {
      const scale = row.scale ? renderScale(row.scale) : "";
      return `<tr><th>${escapeHtml(row.property)}</th>${row.values
        .map(cell)
        .join("")}<td class="tally">${scale}</td></tr>`;
    })
    .join("\n");
  return `<table class="compare">
<thead><tr><th>property</th>${head}<th>scale</th></tr></thead>
<tbody>${rows}</tbody>
</table>`;
}

export function renderPropertyTable(
  properties: Record<string, unknown>,
): string {
  const rows = Object.entries(properties)
    .filter(([, v]) => v !== null && !Array.isArray(v))
    .map(
      ([k, v]) =>
        `<tr><th>${escapeHtml(k)}</th><td>${escapeHtml(String(v))}</td></tr>`,
    )
    .join("\n");
  return `<table class="properties"><tbody>${rows}</tbody></table>`;
}

export function renderDetail(detail: GraphDetail): string {
  const md = detail.metadata;
  const image = detail.has_image
    ? `<img class="drawing" src="/graphs/${escapeHtml(detail.id)}/image.svg" alt="drawing of ${escapeHtml(md.name)}">`
    : `<div class="drawing placeholder">drawing pending</div>`;
  const pending = detail.status === "pending-analysis"
    ? `<p class="pending-note">analysis pending, refreshing…</p>`
    : "";
  const failed = detail.analysis_error
    ? `<p class="error">analysis failed: ${escapeHtml(detail.analysis_error)}</p>`
    : "";
  const props = detail.properties
    ? renderPropertyTable(detail.properties)
    : `<p class="empty">no properties yet</p>`;
  const comments = md.comments
    .map(
      (c) =>
        `<li><strong>${escapeHtml(c.author)}</strong> ${escapeHtml(c.text)}</li>`,
    )
    .join("");
  const references = md.references
    .map(
      (r) =>
        `<li>[${escapeHtml(r.kind)}] ${escapeHtml(r.citation_or_url)}</li>`,
    )
    .join("");
  return `<article class="detail">
<header>
  <h2>${escapeHtml(md.name)}</h2>
  <p class="byline">by ${escapeHtml(md.creator)} · ${escapeHtml(md.uploaded_at)} · <span class="status">${escapeHtml(detail.status)}</span></p>
  <div class="tags">${md.tags.map((t) => `<span class="tag">${escapeHtml(t)}</span>`).join(" ")}</div>
</header>
${pending}${failed}
${image}
<section><h3>Properties</h3>${props}</section>
<section><h3>Description</h3><p>${escapeHtml(md.description ?? "")}</p></section>
<section><h3>Creation method</h3><p>${escapeHtml(md.creation_method ?? "")}</p></section>
<section><h3>Comments</h3><ul>${comments}</ul></section>
<section><h3>References</h3><ul>${references}</ul></section>
<section class="download"><h3>Download</h3>
  <select id="download-format">
    <option value="">original (${escapeHtml(detail.format)})</option>
    <option value="gml">gml</option>
    <option value="graphml">graphml</option>
    <option value="dimacs">dimacs</option>
    <option value="matrix-market">matrix-market</option>
  </select>
  <button id="download-button">download</button>
  <div id="loss-warning"></div>
</section>
</article>`;
}

export function renderLossWarning(report: LossReportDoc): string {
  if (report.lossless) {
    return `<p class="lossless">conversion is lossless</p>`;
  }
  const items = report.dropped_items
    .map(
      (i) =>
        `<li>${escapeHtml(i.kind)} ×${i.count}: ${escapeHtml(i.message)}</li>`,
    )
    .join("");
  return `<div class="loss-warning"><p>this format drops information:</p><ul>${items}</ul></div>`;
}

export function renderImportResults(results: ImportFileResult[]): string {
  const rows = results
    .map((r) =>
      r.id
        ? `<li class="ok">${escapeHtml(r.filename)} → <a href="#/graphs/${escapeHtml(r.id)}">${escapeHtml(r.id)}</a></li>`
        : `<li class="failed">${escapeHtml(r.filename)}: ${escapeHtml(r.error ?? "unknown error")}</li>`,
    )
    .join("");
  return `<ul class="import-results">${rows}</ul>`;
}

export function renderError(message: string): string {
  return `<p class="error">${escapeHtml(message)}</p>`;
}

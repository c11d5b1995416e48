import { describe, expect, it } from "vitest";

import {
  renderCompareTable,
  renderImportResults,
  renderLossWarning,
  renderScale,
  renderSummaryGrid,
} from "../src/render.js";
import { toCompareVM, toSummaryVM } from "../src/vm.js";
import { compareK4C4, compareK4K5, summary } from "./fixtures.js";

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

describe("compare table", () => {
  it("renders one scale marker per boolean row with the right state", () => {
    const html = renderCompareTable(toCompareVM(compareK4K5));
    expect(count(html, 'class="scale scale-some"')).toBe(1); // is_planar
    expect(count(html, 'class="scale scale-all"')).toBe(1); // is_connected
    expect(count(html, 'class="scale scale-none"')).toBe(3);
    const booleanRows = compareK4K5.rows.filter((r) => r.tally).length;
    expect(count(html, 'class="scale ')).toBe(booleanRows);
  });

  it("renders the all-planar pair with a full scale", () => {
    const html = renderCompareTable(toCompareVM(compareK4C4));
    expect(html).toContain('scale-all" title="all"');
    const planarRow = html
      .split("\n")
      .find((line) => line.includes("is_planar"));
    expect(planarRow).toContain("scale-all");
  });

  it("uses distinct glyphs for the three states", () => {
    const glyphs = new Set(
      ["none", "some", "all"].map(
        (s) => renderScale(s as "none" | "some" | "all"),
    ));
    expect(glyphs.size).toBe(3);
  });
});

describe("summary grid", () => {
  it("renders exactly one card per result", () => {
    const results = [summary(), summary({ id: "X".repeat(26), name: "two" })];
    const html = renderSummaryGrid(results.map(toSummaryVM), 2);
    expect(count(html, 'class="card"')).toBe(2);
  });

  it("a refined (subset) result list never renders more cards", () => {
    const base = [summary(), summary({ id: "Y".repeat(26) })];
    const refined = base.slice(0, 1);
    const baseCards = count(renderSummaryGrid(base.map(toSummaryVM), 2),
                            'class="card"');
    const refinedCards = count(
      renderSummaryGrid(refined.map(toSummaryVM), 1), 'class="card"');
    expect(refinedCards).toBeLessThanOrEqual(baseCards);
  });

  it("escapes hostile names", () => {
    const html = renderSummaryGrid(
      [toSummaryVM(summary({ name: "<script>alert(1)</script>" }))],
      1,
    );
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("loss warning", () => {
  it("says so when the conversion is lossless", () => {
    const html = renderLossWarning({ lossless: true, dropped_items: [] });
    expect(html).toContain("lossless");
  });

  it("lists every dropped item otherwise", () => {
    const html = renderLossWarning({
      lossless: false,
      dropped_items: [
        { kind: "node-label", count: 4, message: "node labels dropped" },
        { kind: "directedness", count: 6, message: "directions dropped" },
      ],
    });
    expect(html).toContain("node-label");
    expect(html).toContain("directions dropped");
    expect(count(html, "<li>")).toBe(2);
  });
});

describe("import results", () => {
  it("renders green and red rows per file", () => {
    const html = renderImportResults([
      { filename: "a.gml", id: "1".repeat(26), error: null },
      { filename: "b.gml", id: "2".repeat(26), error: null },
      { filename: "bad.gml", id: null, error: "line 1, column 2: boom" },
    ]);
    expect(count(html, 'class="ok"')).toBe(2);
    expect(count(html, 'class="failed"')).toBe(1);
    expect(html).toContain("line 1, column 2");
  });
});

/** Search page: criteria list with an add-criterion refinement control. */

import { ApiClient, ApiError, Sequencer } from "../api.js";
import {
  CRITERION_SPECS,
  Criterion,
  fromSearchParams,
  refine,
  toQueryString,
  validateRefinement,
} from "../query.js";
import { renderError, renderSummaryGrid, escapeHtml } from "../render.js";
import { searchHash } from "../router.js";
import { toSummaryVM } from "../vm.js";

const seq = new Sequencer();

export async function showSearchPage(
  root: HTMLElement,
  api: ApiClient,
  params: URLSearchParams,
): Promise<void> {
  const criteria = fromSearchParams(params);
  root.innerHTML = `
<section class="search-controls">
  <h2>Search</h2>
  <div class="criteria">${renderCriteriaChips(criteria)}</div>
  <form id="add-criterion" class="add-criterion">
    <select id="criterion-key">
      ${CRITERION_SPECS.map(
        (s) => `<option value="${s.key}">${escapeHtml(s.label)}</option>`,
      ).join("")}
    </select>
    <input id="criterion-value" placeholder="value">
    <button type="submit">add criterion</button>
    <span id="criterion-error" class="inline-error"></span>
  </form>
</section>
<section id="results">loading…</section>`;

  const form = root.querySelector<HTMLFormElement>("#add-criterion")!;
  const errorSlot = root.querySelector<HTMLElement>("#criterion-error")!;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const key = root.querySelector<HTMLSelectElement>("#criterion-key")!.value;
    const value = root.querySelector<HTMLInputElement>("#criterion-value")!.value;
    const next: Criterion = { key, value };
    const problem = validateRefinement(criteria, next);
    if (problem) {
      errorSlot.textContent = problem; // invalid: no request is sent
      return;
    }
    window.location.hash = searchHash(toQueryString(refine(criteria, next)));
  });

  const results = root.querySelector<HTMLElement>("#results")!;
  const ticket = seq.next();
  try {
    const response = await api.search(toQueryString(criteria));
    if (!seq.isCurrent(ticket)) {
      return; // a newer query superseded this one
    }
    results.innerHTML = renderSummaryGrid(
      response.results.map(toSummaryVM),
      response.total,
    );
  } catch (error) {
    if (!seq.isCurrent(ticket)) {
      return;
    }
    results.innerHTML = renderError(
      error instanceof ApiError ? error.message : String(error),
    );
  }
}

function renderCriteriaChips(criteria: Criterion[]): string {
  if (criteria.length === 0) {
    return `<span class="empty">no criteria (showing everything)</span>`;
  }
  return criteria
    .map(
      (c) =>
        `<span class="chip">${escapeHtml(c.key)} = ${escapeHtml(c.value)}</span>`,
    )
    .join(" ");
}

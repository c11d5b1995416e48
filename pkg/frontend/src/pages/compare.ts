/** Visual comparison of 2..8 graphs with the three-state boolean scale. */

import { ApiClient, ApiError } from "../api.js";
import { renderCompareTable, renderError } from "../render.js";
import { toCompareVM } from "../vm.js";

export async function showComparePage(
  root: HTMLElement,
  api: ApiClient,
  params: URLSearchParams,
): Promise<void> {
  const ids = (params.get("ids") ?? "").split(",").filter(Boolean);
  if (ids.length < 2) {
    root.innerHTML = renderError(
      "compare needs at least two graph ids: #/compare?ids=a,b",
    );
    return;
  }
  root.innerHTML = `<h2>Compare</h2><p>loading…</p>`;
  try {
    const response = await api.compare(ids);
    root.innerHTML = `<h2>Compare</h2>
<p class="legend">scale: ○ none · ◐ some · ● all</p>
${renderCompareTable(toCompareVM(response))}`;
  } catch (error) {
    root.innerHTML = renderError(
      error instanceof ApiError ? error.message : String(error),
    );
  }
}

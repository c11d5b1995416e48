/** Graph detail page: drawing, properties, annotations, download selector.
 * Pending records poll until analysis resolves. Works unauthenticated. */

import { ApiClient, ApiError } from "../api.js";
import { renderDetail, renderError, renderLossWarning } from "../render.js";

const POLL_MS = 1500;
let pollTimer: ReturnType<typeof setTimeout> | null = null;

export function cancelDetailPolling(): void {
  if (pollTimer !== null) {
    clearTimeout(pollTimer);
    pollTimer = null;
  }
}

export async function showDetailPage(
  root: HTMLElement,
  api: ApiClient,
  id: string,
): Promise<void> {
  cancelDetailPolling();
  try {
    const detail = await api.getGraph(id);
    root.innerHTML = renderDetail(detail);
    wireDownload(root, api, id);
    if (detail.status === "pending-analysis") {
      pollTimer = setTimeout(() => {
        void showDetailPage(root, api, id);
      }, POLL_MS);
    }
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      root.innerHTML = renderError(`no graph with id ${id}`);
    } else {
      root.innerHTML = renderError(
        error instanceof ApiError ? error.message : String(error),
      );
    }
  }
}

function wireDownload(root: HTMLElement, api: ApiClient, id: string): void {
  const select = root.querySelector<HTMLSelectElement>("#download-format");
  const button = root.querySelector<HTMLButtonElement>("#download-button");
  const warning = root.querySelector<HTMLElement>("#loss-warning");
  if (!select || !button || !warning) {
    return;
  }
  select.addEventListener("change", async () => {
    warning.innerHTML = "";
    if (!select.value) {
      return;
    }
    try {
      const { report } = await api.convertWithReport(id, select.value);
      warning.innerHTML = renderLossWarning(report);
    } catch (error) {
      warning.innerHTML = renderError(
        error instanceof ApiError ? error.message : String(error),
      );
    }
  });
  button.addEventListener("click", () => {
    window.open(api.downloadUrl(id, select.value || null), "_blank");
  });
}

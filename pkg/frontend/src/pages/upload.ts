/** Upload page: single file with metadata form, or a zip for bulk import
 * with per-file success/error feedback. */

import { ApiClient, ApiError } from "../api.js";
import { renderError, renderImportResults, escapeHtml } from "../render.js";
import { detailHash } from "../router.js";
import {
  isZipUpload,
  parseTags,
  validateUploadForm,
} from "../validation.js";

export function showUploadPage(root: HTMLElement, api: ApiClient): void {
  root.innerHTML = `
<section class="upload">
  <h2>Upload</h2>
  <form id="upload-form">
    <label>file <input type="file" id="file"></label>
    <span class="inline-error" data-for="file"></span>
    <label>name <input id="name" placeholder="my graph"></label>
    <span class="inline-error" data-for="name"></span>
    <label>creator <input id="creator"></label>
    <span class="inline-error" data-for="creator"></span>
    <label>tags <input id="tags" placeholder="comma,separated"></label>
    <span class="inline-error" data-for="tags"></span>
    <label>description <textarea id="description"></textarea></label>
    <label>API token <input id="token" placeholder="empty on open servers"></label>
    <button type="submit">upload</button>
  </form>
  <div id="upload-result"></div>
</section>`;

  const form = root.querySelector<HTMLFormElement>("#upload-form")!;
  const result = root.querySelector<HTMLElement>("#upload-result")!;

  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    const fileInput = root.querySelector<HTMLInputElement>("#file")!;
    const file = fileInput.files?.[0] ?? null;
    const fields = {
      name: value(root, "#name"),
      creator: value(root, "#creator"),
      tags: value(root, "#tags"),
      filename: file?.name ?? "",
    };
    const errors = validateUploadForm(fields);
    for (const slot of root.querySelectorAll<HTMLElement>(".inline-error")) {
      slot.textContent = errors[slot.dataset.for ?? ""] ?? "";
    }
    if (Object.keys(errors).length > 0 || !file) {
      return; // invalid form: nothing is sent
    }
    api.token = value(root, "#token") || null;
    result.innerHTML = "uploading…";
    try {
      if (isZipUpload(file.name)) {
        const results = await api.importZip(await file.arrayBuffer());
        result.innerHTML = renderImportResults(results);
      } else {
        const response = await api.upload({
          content: await file.text(),
          name: fields.name.trim(),
          creator: fields.creator.trim(),
          tags: parseTags(fields.tags),
          description: value(root, "#description") || undefined,
        });
        result.innerHTML =
          `<p class="ok">uploaded as ` +
          `<a href="${detailHash(response.id)}">${escapeHtml(response.id)}</a>` +
          ` (${escapeHtml(response.status)})</p>`;
      }
    } catch (error) {
      result.innerHTML = renderError(
        error instanceof ApiError ? error.message : String(error),
      );
    }
  });
}

function value(root: HTMLElement, selector: string): string {
  return (
    root.querySelector<HTMLInputElement | HTMLTextAreaElement>(selector)
      ?.value ?? ""
  );
}

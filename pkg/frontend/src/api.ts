/** Typed client for the archive's public HTTP API.
 *
 * Reads never send credentials (graph detail pages must work for guests);
 * writes attach the bearer token when one is configured.  Pages guard
 * against out-of-order responses with a Sequencer: every request takes a
 * ticket and only the latest ticket's response is applied.
 */

import type {
  CompareResponse,
  GraphDetail,
  ImportFileResult,
  LossReportDoc,
  SearchResponse,
  UploadBody,
  UploadResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parseError(response: Response): Promise<ApiError> {
  let message = `request failed (${response.status})`;
  try {
    const body = await response.json();
    if (body && typeof body.error === "string") {
      message = body.error;
    } else if (body && typeof body.detail === "string") {
      message = body.detail;
    }
  } catch {
    /* non-JSON error body */
  }
  return new ApiError(response.status, message);
}

export class ApiClient {
  token: string | null = null;

  constructor(
    private baseUrl = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  private writeHeaders(contentType?: string): Record<string, string> {
    const headers: Record<string, string> = {};
    if (contentType) {
      headers["Content-Type"] = contentType;
    }
    if (this.token) {
      headers["Authorization"] = `Bearer ${this.token}`;
    }
    return headers;
  }

  search(queryString: string): Promise<SearchResponse> {
    return this.getJson(`/search?${queryString}`);
  }

  getGraph(id: string): Promise<GraphDetail> {
    return this.getJson(`/graphs/${encodeURIComponent(id)}`);
  }

  compare(ids: string[]): Promise<CompareResponse> {
    return this.getJson(`/compare?ids=${ids.map(encodeURIComponent).join(",")}`);
  }

  async upload(body: UploadBody): Promise<UploadResponse> {
    const response = await this.fetchFn(`${this.baseUrl}/graphs`, {
      method: "POST",
      headers: this.writeHeaders("application/json"),
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as UploadResponse;
  }

  async importZip(data: ArrayBuffer): Promise<ImportFileResult[]> {
    const response = await this.fetchFn(`${this.baseUrl}/import`, {
      method: "POST",
      headers: this.writeHeaders("application/zip"),
      body: data,
    });
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as ImportFileResult[];
  }

  downloadUrl(id: string, format: string | null): string {
    const base = `${this.baseUrl}/graphs/${encodeURIComponent(id)}/download`;
    return format ? `${base}?format=${encodeURIComponent(format)}` : base;
  }

  /** Fetch a conversion and surface the loss report the server attaches
   * as a response header, so the UI can warn before saving. */
  async convertWithReport(
    id: string,
    format: string,
  ): Promise<{ data: Blob; report: LossReportDoc }> {
    const response = await this.fetchFn(this.downloadUrl(id, format));
    if (!response.ok) {
      throw await parseError(response);
    }
    const header = response.headers.get("X-Loss-Report");
    const report: LossReportDoc = header
      ? JSON.parse(header)
      : { lossless: true, dropped_items: [] };
    return { data: await response.blob(), report };
  }
}

/** Monotonic tickets for discarding stale responses. */
export class Sequencer {
  private latest = 0;

  next(): number {
    this.latest += 1;
    return this.latest;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.latest;
  }
}

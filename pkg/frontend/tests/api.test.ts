import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, Sequencer } from "../src/api.js";

interface Recorded {
  url: string;
  init?: RequestInit;
}

function fakeFetch(
  responder: (url: string) => Response,
): { calls: Recorded[]; fetch: (url: string, init?: RequestInit) => Promise<Response> } {
  const calls: Recorded[] = [];
  return {
    calls,
    fetch: (url, init) => {
      calls.push({ url, init });
      return Promise.resolve(responder(url));
    },
  };
}

const json = (body: unknown, status = 200, headers: Record<string, string> = {}) =>
  new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json", ...headers },
  });

describe("guest access", () => {
  it("detail reads never send credentials", async () => {
    const { calls, fetch } = fakeFetch(() => json({ id: "x" }));
    const api = new ApiClient("", fetch);
    api.token = "secret"; // even with a token configured
    await api.getGraph("abc");
    expect(calls[0].url).toBe("/graphs/abc");
    expect(calls[0].init).toBeUndefined(); // plain GET, no headers at all
  });
});

describe("writes", () => {
  const body = { content: "graph []", name: "g", creator: "c" };

  it("attach the bearer token when configured", async () => {
    const { calls, fetch } = fakeFetch(() => json({ id: "x" }, 201));
    const api = new ApiClient("", fetch);
    api.token = "tok";
    await api.upload(body);
    const headers = calls[0].init?.headers as Record<string, string>;
    expect(headers.Authorization).toBe("Bearer tok");
  });

  it("send no authorization header on open servers", async () => {
    const { calls, fetch } = fakeFetch(() => json({ id: "x" }, 201));
    await new ApiClient("", fetch).upload(body);
    const headers = calls[0].init?.headers as Record<string, string>;
    expect(headers.Authorization).toBeUndefined();
  });

  it("surface the server's error message and status", async () => {
    const { fetch } = fakeFetch(() =>
      json({ error: "authentication required" }, 401),
    );
    const api = new ApiClient("", fetch);
    const failure = await api.upload(body).catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(401);
    expect(failure.message).toBe("authentication required");
  });
});

describe("conversion with loss report", () => {
  it("parses the X-Loss-Report header", async () => {
    const report = {
      lossless: false,
      dropped_items: [{ kind: "node-label", count: 2, message: "dropped" }],
    };
    const { fetch } = fakeFetch(
      () =>
        new Response("p edge 2 1\ne 1 2\n", {
          status: 200,
          headers: { "X-Loss-Report": JSON.stringify(report) },
        }),
    );
    const api = new ApiClient("", fetch);
    const result = await api.convertWithReport("abc", "dimacs");
    expect(result.report).toEqual(report);
    expect(await result.data.text()).toContain("p edge");
  });
});

describe("stale response discarding", () => {
  it("only the latest ticket is current", () => {
    const seq = new Sequencer();
    const first = seq.next();
    const second = seq.next();
    expect(seq.isCurrent(first)).toBe(false);
    expect(seq.isCurrent(second)).toBe(true);
    const third = seq.next();
    expect(seq.isCurrent(second)).toBe(false);
    expect(seq.isCurrent(third)).toBe(true);
  });
});

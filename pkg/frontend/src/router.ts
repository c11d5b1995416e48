/** Hash-based routing so every view has a deep link. */

export type PageName = "search" | "detail" | "compare" | "upload";

export interface Route {
  page: PageName;
  /** Graph id for detail pages. */
  id?: string;
  /** Query portion (criteria for search, ids for compare). */
  params: URLSearchParams;
}

export function parseHash(hash: string): Route {
  const cleaned = hash.replace(/^#\/?/, "");
  const [path, query = ""] = cleaned.split("?", 2);
  const params = new URLSearchParams(query);
  const segments = path.split("/").filter(Boolean);
  if (segments[0] === "graphs" && segments[1]) {
    return { page: "detail", id: segments[1], params };
  }
  if (segments[0] === "compare") {
    return { page: "compare", params };
  }
  if (segments[0] === "upload") {
    return { page: "upload", params };
  }
  return { page: "search", params };
}

export function searchHash(queryString: string): string {
  return queryString ? `#/search?${queryString}` : "#/search";
}

export function detailHash(id: string): string {
  return `#/graphs/${id}`;
}

export function compareHash(ids: string[]): string {
  return `#/compare?ids=${ids.join(",")}`;
}

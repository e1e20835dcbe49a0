/**
 * URL hash <-> view state codec.
 *
 * The hash is the single source of truth for what the UI shows, so any
 * view can be shared as a link and the back button replays history:
 *
 *   #/search?q=plague&zone=causes&from=1894&to=1896
 *   #/doc/rpt-hongkong-1894?dq=plague&page=3
 */

export interface SearchState {
  view: "search";
  q: string;
  zone: string | null;
  type: string | null;
  yearFrom: string | null;
  yearTo: string | null;
}

export interface DocState {
  view: "doc";
  docId: string;
  dq: string;
  page: number | null;
}

export type Route = SearchState | DocState;

export function emptySearch(): SearchState {
  return { view: "search", q: "", zone: null, type: null, yearFrom: null, yearTo: null };
}

export function parseRoute(hash: string): Route {
  const raw = hash.startsWith("#") ? hash.slice(1) : hash;
  const query = raw.includes("?") ? raw.slice(raw.indexOf("?") + 1) : "";
  const path = raw.includes("?") ? raw.slice(0, raw.indexOf("?")) : raw;
  const params = new URLSearchParams(query);

  const docMatch = path.match(/^\/doc\/([^/]+)$/);
  if (docMatch) {
    const pageRaw = params.get("page");
    const page = pageRaw !== null && /^\d+$/.test(pageRaw)
      ? Number(pageRaw)
      : null;
    return {
      view: "doc",
      docId: decodeURIComponent(docMatch[1]),
      dq: params.get("dq") ?? "",
      page,
    };
  }

  return {
    view: "search",
    q: params.get("q") ?? "",
    zone: params.get("zone"),
    type: params.get("type"),
    yearFrom: params.get("from"),
    yearTo: params.get("to"),
  };
}

export function routeToHash(route: Route): string {
  const params = new URLSearchParams();
  if (route.view === "doc") {
    if (route.dq) params.set("dq", route.dq);
    if (route.page !== null) params.set("page", String(route.page));
    const query = params.toString();
    return `#/doc/${encodeURIComponent(route.docId)}${query ? "?" + query : ""}`;
  }
  if (route.q) params.set("q", route.q);
  if (route.zone) params.set("zone", route.zone);
  if (route.type) params.set("type", route.type);
  if (route.yearFrom) params.set("from", route.yearFrom);
  if (route.yearTo) params.set("to", route.yearTo);
  const query = params.toString();
  return `#/search${query ? "?" + query : ""}`;
}

/** Service query string for a search view: user terms plus facet filters. */
export function composeQuery(state: SearchState): string {
  const parts: string[] = [];
  if (state.q.trim()) parts.push(state.q.trim());
  if (state.zone) parts.push(`zone:${state.zone}`);
  if (state.type) parts.push(`type:${state.type}`);
  const from = state.yearFrom?.trim() || "";
  const to = state.yearTo?.trim() || "";
  if (from && to) {
    parts.push(`year:[${from} TO ${to}]`);
  } else if (from || to) {
    parts.push(`year:${from || to}`);
  }
  return parts.join(" ");
}

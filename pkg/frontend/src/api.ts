// Thin fetch client for the corpus search service. All endpoints are
// GET and return JSON; errors carry {"error": message} bodies.

import type {
  DocSearchResponse,
  DocumentResponse,
  SearchResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly position?: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

let apiBase = "";

export function setApiBase(url: string): void {
  apiBase = url.replace(/\/+$/, "");
}

async function getJson<T>(
  path: string,
  params?: Record<string, string>,
): Promise<T> {
  const query = params ? "?" + new URLSearchParams(params).toString() : "";
  let response: Response;
  try {
    response = await fetch(apiBase + path + query);
  } catch {
    throw new ApiError(0, "search service unreachable");
  }
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    let message = `request failed (${response.status})`;
    if (body && typeof body.error === "string") {
      message = body.error;
    } else if (body && body.status === "loading") {
      message = "index is still loading, retry shortly";
    }
    const position = body && typeof body.position === "number"
      ? body.position
      : undefined;
    throw new ApiError(response.status, message, position);
  }
  return body as T;
}

export function searchCorpus(q: string): Promise<SearchResponse> {
  return getJson<SearchResponse>("/search", { q });
}

export function fetchDocument(docId: string): Promise<DocumentResponse> {
  return getJson<DocumentResponse>(
    `/documents/${encodeURIComponent(docId)}`,
  );
}

export function searchInDocument(
  docId: string,
  q: string,
): Promise<DocSearchResponse> {
  return getJson<DocSearchResponse>(
    `/documents/${encodeURIComponent(docId)}/search`,
    { q },
  );
}

export function pageImageUrl(docId: string, page: number): string {
  return `${apiBase}/pages/${encodeURIComponent(docId)}/${page}.png`;
}

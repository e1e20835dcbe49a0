// Response shapes of the corpus search service (JSON API).

export interface Snippet {
  text: string;
  page: number | null;
  regions: string[]; // "x,y,w,h" strings in page-image pixels
}

export interface SearchHit {
  doc_id: string;
  title: string;
  year: number;
  score: number;
  snippets: Snippet[];
}

export type FacetCounts = Record<string, Record<string, number>>;

export interface SearchResponse {
  total: number;
  index_version: string;
  hits: SearchHit[];
  facets: FacetCounts;
}

export interface DocMatch {
  match: string;
  page: number | null;
  region: string | null;
  char_start: number;
  char_end: number;
}

export interface DocSearchResponse {
  resources: DocMatch[];
  index_version: string;
}

export interface ZoneInfo {
  label: string;
  start: number;
  end: number;
  page: number | null;
}

export interface DocumentResponse {
  doc_id: string;
  title: string;
  year: number;
  main_location: string | null;
  language: string;
  zones: ZoneInfo[];
  entity_counts: Record<string, number>;
  entity_total: number;
  index_version: string;
}

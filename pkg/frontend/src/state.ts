/** UI state shapes mirroring the service's wire formats, plus invariants. */

export interface Recommendation {
  text: string;
  source: string;
  weight?: number;
  replaces?: string | null;
}

export interface CloudTerm {
  term: string;
  count: number;
  bucket: number; // 1..5, monotone in count
}

export interface PreSearchBundle {
  generation: number;
  vdo: Recommendation[];
  identifiers: Recommendation[];
  cloud: CloudTerm[];
}

export interface SearchResultItem {
  id: string;
  kind: string;
  name: string;
  file: string;
  line_start: number;
  line_end: number;
  score: number;
  snippet_lines: string[];
}

export interface SearchResponse {
  generation: number;
  results: SearchResultItem[];
}

export interface PostSearchResponse {
  generation: number;
  recommendations: Recommendation[];
}

export interface StatusResponse {
  generation: number;
  doc_count: number;
  term_count: number;
  cache_path: string;
}

export interface UiState {
  query: string;
  bundle: PreSearchBundle | null;
  results: SearchResultItem[];
  suggestions: Recommendation[];
  generation: number;
}

export function initialState(): UiState {
  return { query: "", bundle: null, results: [], suggestions: [], generation: 0 };
}

export function applyPresearch(state: UiState, query: string, bundle: PreSearchBundle): UiState {
  return { ...state, query, bundle, generation: bundle.generation };
}

/**
 * Fold a search (and its optional post-search follow-up) into the state.
 * Suggestions are only ever nonempty when the search came back empty for a
 * nonempty query.
 */
export function applySearch(
  state: UiState,
  query: string,
  response: SearchResponse,
  suggestions: Recommendation[] = [],
): UiState {
  const failed = response.results.length === 0 && query.trim().length > 0;
  return {
    ...state,
    query,
    results: response.results,
    suggestions: failed ? suggestions : [],
    generation: response.generation,
  };
}

/** Font size class per cloud bucket; strictly monotone in the bucket. */
export function fontClassForBucket(bucket: number): string {
  const clamped = Math.min(5, Math.max(1, Math.round(bucket)));
  return `cloud-size-${clamped}`;
}

export const BUCKET_FONT_SIZES_PX: readonly number[] = [12, 15, 18, 22, 27];

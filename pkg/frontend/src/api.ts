/** Typed client for the local search service's JSON endpoints. */

import type {
  PostSearchResponse,
  PreSearchBundle,
  SearchResponse,
  StatusResponse,
} from "./state.js";

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async get<T>(path: string, params: Record<string, string>, signal?: AbortSignal): Promise<T> {
    const query = new URLSearchParams(params).toString();
    let response: Response;
    try {
      response = await fetch(`${this.base}${path}?${query}`, { signal });
    } catch (err) {
      if ((err as Error).name === "AbortError") throw err;
      throw new ApiError(`service unreachable: ${(err as Error).message}`);
    }
    if (!response.ok) {
      throw new ApiError(`${path} failed with ${response.status}`, response.status);
    }
    return (await response.json()) as T;
  }

  presearch(q: string, k = 8, signal?: AbortSignal): Promise<PreSearchBundle> {
    return this.get("/api/presearch", { q, k: String(k) }, signal);
  }

  search(q: string, k = 20, signal?: AbortSignal): Promise<SearchResponse> {
    return this.get("/api/search", { q, k: String(k) }, signal);
  }

  postsearch(q: string, k = 8, signal?: AbortSignal): Promise<PostSearchResponse> {
    return this.get("/api/postsearch", { q, k: String(k) }, signal);
  }

  status(): Promise<StatusResponse> {
    return this.get("/api/status", {});
  }
}

/** Application shell: search box, drop-down, cloud, results, suggestions. */

import { ApiClient } from "./api.js";
import { TagCloud } from "./cloud.js";
import { clear, el } from "./dom.js";
import { Dropdown } from "./dropdown.js";
import { ResultList } from "./results.js";
import {
  applyPresearch,
  applySearch,
  initialState,
  type UiState,
} from "./state.js";
import { SuggestionPanel } from "./suggestions.js";

export interface AppOptions {
  apiBase?: string;
  debounceMs?: number;
  presearchLimit?: number;
  searchLimit?: number;
}

const DEFAULT_DEBOUNCE_MS = 150;

export class App {
  state: UiState = initialState();

  readonly input: HTMLInputElement;
  readonly searchButton: HTMLButtonElement;
  readonly cloudButton: HTMLButtonElement;
  readonly banner: HTMLElement;
  readonly statusLine: HTMLElement;
  readonly dropdown: Dropdown;
  readonly cloud: TagCloud;
  readonly results: ResultList;
  readonly suggestions: SuggestionPanel;

  private readonly api: ApiClient;
  private readonly debounceMs: number;
  private readonly presearchLimit: number;
  private readonly searchLimit: number;
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private presearchAbort: AbortController | null = null;
  private presearchSeq = 0;
  private searchSeq = 0;

  constructor(readonly root: HTMLElement, options: AppOptions = {}) {
    this.api = new ApiClient(options.apiBase ?? "");
    this.debounceMs = options.debounceMs ?? DEFAULT_DEBOUNCE_MS;
    this.presearchLimit = options.presearchLimit ?? 8;
    this.searchLimit = options.searchLimit ?? 20;

    clear(root);
    const bar = el("div", "search-bar");
    this.input = el("input", "search-input");
    this.input.type = "text";
    this.input.placeholder = "search the codebase";
    this.searchButton = el("button", "search-go", "search");
    this.searchButton.type = "button";
    this.cloudButton = el("button", "cloud-toggle", "cloud");
    this.cloudButton.type = "button";
    bar.append(this.input, this.searchButton, this.cloudButton);

    this.banner = el("div", "banner hidden");
    this.dropdown = new Dropdown((text) => this.pickCompletion(text));
    this.cloud = new TagCloud((term) => void this.appendCloudTerm(term));
    this.suggestions = new SuggestionPanel((text) => void this.replaceQuery(text));
    this.results = new ResultList();
    this.statusLine = el("div", "status-line");

    root.append(this.banner, bar, this.dropdown.root, this.cloud.root, this.suggestions.root, this.results.root, this.statusLine);

    this.input.addEventListener("input", () => this.handleInput());
    this.input.addEventListener("keydown", (event) => {
      if (event.key === "Enter") void this.submitSearch(this.input.value);
    });
    this.searchButton.addEventListener("click", () => void this.submitSearch(this.input.value));
    this.cloudButton.addEventListener("click", () => {
      if (this.cloud.toggle()) this.cloud.render(this.state.bundle?.cloud ?? []);
    });
  }

  /** Debounced completion fetch; in-flight requests lose to newer input. */
  handleInput(): void {
    if (this.debounceTimer !== null) clearTimeout(this.debounceTimer);
    const value = this.input.value;
    if (!value.trim()) {
      this.dropdown.hide();
      return;
    }
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      void this.fetchPresearch(value);
    }, this.debounceMs);
  }

  private async fetchPresearch(value: string): Promise<void> {
    this.presearchAbort?.abort();
    const controller = new AbortController();
    this.presearchAbort = controller;
    const seq = ++this.presearchSeq;
    try {
      const bundle = await this.api.presearch(value, this.presearchLimit, controller.signal);
      if (seq !== this.presearchSeq) return; // a newer request already landed
      this.state = applyPresearch(this.state, value, bundle);
      this.hideBanner();
      this.dropdown.render(bundle);
      if (this.cloud.isVisible()) this.cloud.render(bundle.cloud);
      this.renderStatus();
    } catch (err) {
      if ((err as Error).name === "AbortError") return;
      if (seq !== this.presearchSeq) return;
      this.showBanner((err as Error).message); // stale data stays on screen
    }
  }

  /** Run a search; an empty outcome asks for replacement recommendations. */
  async submitSearch(query: string): Promise<void> {
    this.dropdown.hide();
    const seq = ++this.searchSeq;
    try {
      const response = await this.api.search(query, this.searchLimit);
      let suggestions = this.state.suggestions;
      if (response.results.length === 0 && query.trim()) {
        suggestions = (await this.api.postsearch(query, this.presearchLimit)).recommendations;
      }
      if (seq !== this.searchSeq) return;
      this.state = applySearch(this.state, query, response, suggestions);
      this.hideBanner();
      this.suggestions.render(this.state.suggestions);
      if (this.state.results.length) {
        this.results.render(this.state.results);
      } else {
        this.results.renderEmpty(query.trim() ? "no results" : "type a query to search");
      }
      this.renderStatus();
    } catch (err) {
      if (seq !== this.searchSeq) return;
      this.showBanner((err as Error).message);
    }
  }

  /** Drop-down pick: the completion becomes the query and runs immediately. */
  private pickCompletion(text: string): void {
    this.input.value = text;
    void this.submitSearch(text);
  }

  /** Suggestion chip pick: replace the query box and re-search. */
  private async replaceQuery(text: string): Promise<void> {
    this.input.value = text;
    await this.submitSearch(text);
  }

  /**
   * Cloud term click: append to the query with a space separator (repeat
   * clicks append again) and refresh completions. If the service is down
   * the box is restored untouched and the banner explains why.
   */
  private async appendCloudTerm(term: string): Promise<void> {
    const before = this.input.value;
    const appended = before.trim() ? `${before.trimEnd()} ${term}` : term;
    this.input.value = appended;
    try {
      const bundle = await this.api.presearch(appended, this.presearchLimit);
      this.state = applyPresearch(this.state, appended, bundle);
      this.hideBanner();
      this.dropdown.render(bundle);
      if (this.cloud.isVisible()) this.cloud.render(bundle.cloud);
      this.renderStatus();
    } catch (err) {
      if ((err as Error).name === "AbortError") return;
      this.input.value = before;
      this.showBanner((err as Error).message);
    }
  }

  private renderStatus(): void {
    this.statusLine.textContent = this.state.generation
      ? `index generation ${this.state.generation}`
      : "";
  }

  private showBanner(message: string): void {
    this.banner.textContent = `service error: ${message}`;
    this.banner.classList.remove("hidden");
  }

  private hideBanner(): void {
    this.banner.classList.add("hidden");
    this.banner.textContent = "";
  }
}

/** Ranked result list with expandable snippet previews. */

import { clear, el } from "./dom.js";
import type { SearchResultItem } from "./state.js";

export class ResultList {
  readonly root: HTMLElement;

  constructor() {
    this.root = el("ul", "results");
  }

  render(results: SearchResultItem[]): void {
    clear(this.root);
    for (const result of results) {
      this.root.appendChild(this.row(result));
    }
  }

  renderEmpty(message: string): void {
    clear(this.root);
    this.root.appendChild(el("li", "results-empty", message));
  }

  private row(result: SearchResultItem): HTMLElement {
    const item = el("li", "result");
    const header = el("div", "result-header");
    header.appendChild(el("span", "result-kind", result.kind));
    header.appendChild(el("span", "result-name", result.name || "(fragment)"));
    header.appendChild(
      el("span", "result-location", `${result.file}:${result.line_start}-${result.line_end}`),
    );
    header.appendChild(el("span", "result-score", result.score.toFixed(3)));
    item.appendChild(header);

    const preview = el("pre", "result-preview hidden");
    preview.textContent = result.snippet_lines.join("\n");
    item.appendChild(preview);

    header.addEventListener("click", () => {
      const expanded = item.classList.toggle("expanded");
      preview.classList.toggle("hidden", !expanded);
    });
    return item;
  }
}

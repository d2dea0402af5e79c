/** Replacement-query chips shown after a failed search. */

import { clear, el } from "./dom.js";
import type { Recommendation } from "./state.js";

export class SuggestionPanel {
  readonly root: HTMLElement;

  constructor(private readonly onPick: (text: string) => void) {
    this.root = el("div", "suggestions hidden");
  }

  render(recommendations: Recommendation[]): void {
    clear(this.root);
    this.root.classList.toggle("hidden", recommendations.length === 0);
    if (!recommendations.length) return;
    this.root.appendChild(el("span", "suggestions-label", "no results — try:"));
    for (const rec of recommendations) {
      const chip = el("button", `chip chip-${rec.source}`, rec.text);
      chip.type = "button";
      chip.title = rec.replaces ? `${rec.source}: replaces "${rec.replaces}"` : rec.source;
      chip.addEventListener("click", () => this.onPick(rec.text));
      this.root.appendChild(chip);
    }
  }

  hide(): void {
    this.render([]);
  }
}

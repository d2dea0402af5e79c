/** Search-as-you-type drop-down: verb-object pairs first, then identifiers. */

import { clear, el } from "./dom.js";
import type { PreSearchBundle } from "./state.js";

export class Dropdown {
  readonly root: HTMLElement;

  constructor(private readonly onPick: (text: string) => void) {
    this.root = el("div", "dropdown hidden");
  }

  render(bundle: PreSearchBundle | null): void {
    clear(this.root);
    const hasItems = !!bundle && (bundle.vdo.length > 0 || bundle.identifiers.length > 0);
    this.root.classList.toggle("hidden", !hasItems);
    if (!bundle || !hasItems) return;

    if (bundle.vdo.length) {
      this.root.appendChild(el("div", "dropdown-section", "verb-object pairs"));
      for (const rec of bundle.vdo) {
        this.root.appendChild(this.item(rec.text, "dropdown-item vdo-item"));
      }
    }
    if (bundle.identifiers.length) {
      this.root.appendChild(el("div", "dropdown-section", "identifiers"));
      for (const rec of bundle.identifiers) {
        this.root.appendChild(this.item(rec.text, "dropdown-item identifier-item"));
      }
    }
  }

  hide(): void {
    clear(this.root);
    this.root.classList.add("hidden");
  }

  private item(text: string, className: string): HTMLElement {
    const node = el("div", className, text);
    node.addEventListener("mousedown", (event) => {
      event.preventDefault(); // keep focus in the search box
      this.onPick(text);
    });
    return node;
  }
}

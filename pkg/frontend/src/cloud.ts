/** Tag cloud of co-occurring terms; font size class tracks the bucket. */

import { clear, el } from "./dom.js";
import { fontClassForBucket, type CloudTerm } from "./state.js";

export class TagCloud {
  readonly root: HTMLElement;
  private visible = false;

  constructor(private readonly onPick: (term: string) => void) {
    this.root = el("div", "cloud-panel hidden");
  }

  render(terms: CloudTerm[]): void {
    clear(this.root);
    if (!terms.length) {
      this.root.appendChild(el("div", "cloud-empty", "no co-occurring terms"));
      return;
    }
    for (const item of terms) {
      const link = el("a", `cloud-term ${fontClassForBucket(item.bucket)}`, item.term);
      link.href = "#";
      link.title = `co-occurs ${item.count} time${item.count === 1 ? "" : "s"}`;
      link.addEventListener("click", (event) => {
        event.preventDefault();
        this.onPick(item.term);
      });
      this.root.appendChild(link);
      this.root.appendChild(document.createTextNode(" "));
    }
  }

  toggle(): boolean {
    this.visible = !this.visible;
    this.root.classList.toggle("hidden", !this.visible);
    return this.visible;
  }

  isVisible(): boolean {
    return this.visible;
  }
}

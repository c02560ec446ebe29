// Operator preferences that survive a reload within the browser session:
// movement coefficients, which side panels are open, selected page.

import { Coefficients, DEFAULT_COEFFICIENTS, clampCoefficients } from "./protocol.js";

const STORAGE_KEY = "huro-teleop/session";

export type PageName = "setup" | "operate";

interface Stored {
  coefficients: Coefficients;
  panels: Record<string, boolean>;
  page: PageName;
}

export class UiSession {
  private data: Stored;

  constructor(private storage: Storage) {
    this.data = { coefficients: { ...DEFAULT_COEFFICIENTS }, panels: {}, page: "operate" };
    const raw = storage.getItem(STORAGE_KEY);
    if (raw) {
      try {
        const doc = JSON.parse(raw) as Partial<Stored>;
        if (doc.coefficients) this.data.coefficients = clampCoefficients(doc.coefficients);
        if (doc.panels) this.data.panels = doc.panels;
        if (doc.page === "setup" || doc.page === "operate") this.data.page = doc.page;
      } catch {
        // stale/corrupt storage falls back to defaults
      }
    }
  }

  private persist(): void {
    this.storage.setItem(STORAGE_KEY, JSON.stringify(this.data));
  }

  get coefficients(): Coefficients {
    return { ...this.data.coefficients };
  }

  setCoefficients(c: Coefficients): Coefficients {
    this.data.coefficients = clampCoefficients(c);
    this.persist();
    return this.coefficients;
  }

  panelOpen(name: string, fallback = true): boolean {
    return this.data.panels[name] ?? fallback;
  }

  setPanelOpen(name: string, open: boolean): void {
    this.data.panels[name] = open;
    this.persist();
  }

  get page(): PageName {
    return this.data.page;
  }

  setPage(page: PageName): void {
    this.data.page = page;
    this.persist();
  }
}

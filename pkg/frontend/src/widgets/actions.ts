// Posture/recovery actions live in an on-screen submenu, deliberately not
// key-bound: they are rarer than movement, and keeping them visual avoids
// growing an unmemorable key map.

import { el } from "./dom.js";

const ACTIONS: { label: string; action: string; tooltip: string }[] = [
  { label: "Crawl", action: "crawl_forward", tooltip: "Drop to a crawl and creep forward (half step length)" },
  { label: "Get Up", action: "get_up", tooltip: "Stand back up from crawling or a fall" },
  { label: "Start", action: "start_pose", tooltip: "Return to the event's starting position" },
  { label: "Reset", action: "reset_pose", tooltip: "Reset to a default standing posture in place" },
];

export interface ActionMenu {
  el: HTMLElement;
  buttons: HTMLButtonElement[];
}

export function createActionMenu(
  publishCommand: (payload: Record<string, unknown>) => boolean,
): ActionMenu {
  const list = el("div", { className: "submenu-scroll" });
  const buttons: HTMLButtonElement[] = [];
  for (const a of ACTIONS) {
    const btn = el("button", { className: "control action-btn", text: a.label, tooltip: a.tooltip });
    btn.addEventListener("click", () => {
      publishCommand({ action: a.action });
    });
    buttons.push(btn);
    list.append(btn);
  }
  return { el: list, buttons };
}

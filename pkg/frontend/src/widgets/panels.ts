// Collapsible sidebar panel: a header button toggles the body inside the
// same frame; open/closed state persists with the session so returning
// operators keep their arrangement.

import { UiSession } from "../session.js";
import { el } from "./dom.js";

export interface Panel {
  el: HTMLElement;
  body: HTMLElement;
  toggle: HTMLButtonElement;
  setOpen(open: boolean): void;
}

export function makePanel(
  session: UiSession,
  name: string,
  title: string,
  tooltip: string,
  openByDefault = true,
): Panel {
  const body = el("div", { className: "panel-body" });
  const toggle = el("button", { className: "panel-toggle", tooltip });
  const root = el("section", { className: "panel", attrs: { "data-panel": name } }, toggle, body);

  const setOpen = (open: boolean) => {
    body.hidden = !open;
    toggle.textContent = `${open ? "▾" : "▸"} ${title}`;
    session.setPanelOpen(name, open);
  };
  toggle.addEventListener("click", () => setOpen(body.hidden));
  setOpen(session.panelOpen(name, openByDefault));
  return { el: root, body, toggle, setOpen };
}

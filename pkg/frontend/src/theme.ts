// Blue/orange contrast scheme and the layout model. The constants here
// drive the runtime styles (main.ts injects them as CSS custom
// properties), so the tests that assert contrast and clip-freedom are
// checking the same numbers the browser renders with.

export const PALETTE = {
  background: "#0b1d33", // dark blue page backdrop
  panel: "#132b4a",
  panelBorder: "#24446e",
  text: "#e8eef7",
  accent: "#ff8c1a", // bright orange controls
  accentText: "#132038",
  info: "#9fd0ff",
  warn: "#ffc14d",
  error: "#ff6b6b",
  stale: "#8892a0",
} as const;

function channel(v: number): number {
  const c = v / 255;
  return c <= 0.03928 ? c / 12.92 : Math.pow((c + 0.055) / 1.055, 2.4);
}

export function relativeLuminance(hex: string): number {
  const n = parseInt(hex.replace("#", ""), 16);
  const r = channel((n >> 16) & 0xff);
  const g = channel((n >> 8) & 0xff);
  const b = channel(n & 0xff);
  return 0.2126 * r + 0.7152 * g + 0.0722 * b;
}

export function contrastRatio(a: string, b: string): number {
  const la = relativeLuminance(a);
  const lb = relativeLuminance(b);
  const [hi, lo] = la >= lb ? [la, lb] : [lb, la];
  return (hi + 0.05) / (lo + 0.05);
}

// -- layout model ------------------------------------------------------

export const LAYOUT = {
  headerH: 48,
  sidebarMaxW: 300,
  sidebarFraction: 0.4, // of viewport width, before the max kicks in
  controlsRowH: 64,
  mapPaneFraction: 0.55,
} as const;

export interface Region {
  name: string;
  x: number;
  y: number;
  w: number;
  h: number;
  scrollable: boolean;
}

export function sidebarWidth(viewportW: number): number {
  return Math.min(LAYOUT.sidebarMaxW, LAYOUT.sidebarFraction * viewportW);
}

// The operate page: header bar, camera region, sidebar, controls strip.
// Every region is sized from the viewport, so nothing can extend past it;
// anything oversized inside a scrollable region scrolls internally.
export function operateLayout(viewportW: number, viewportH: number): Region[] {
  const side = sidebarWidth(viewportW);
  const bodyH = viewportH - LAYOUT.headerH;
  const cameraH = bodyH - LAYOUT.controlsRowH;
  return [
    { name: "header", x: 0, y: 0, w: viewportW, h: LAYOUT.headerH, scrollable: false },
    { name: "camera", x: 0, y: LAYOUT.headerH, w: viewportW - side, h: cameraH, scrollable: false },
    { name: "sidebar", x: viewportW - side, y: LAYOUT.headerH, w: side, h: bodyH, scrollable: true },
    { name: "controls", x: 0, y: LAYOUT.headerH + cameraH, w: viewportW - side, h: LAYOUT.controlsRowH, scrollable: true },
  ];
}

// The setup page: header, map canvas pane on the left, edit tools on the right.
export function setupLayout(viewportW: number, viewportH: number): Region[] {
  const mapW = Math.round(viewportW * LAYOUT.mapPaneFraction);
  const bodyH = viewportH - LAYOUT.headerH;
  return [
    { name: "header", x: 0, y: 0, w: viewportW, h: LAYOUT.headerH, scrollable: false },
    { name: "map", x: 0, y: LAYOUT.headerH, w: mapW, h: bodyH, scrollable: false },
    { name: "tools", x: mapW, y: LAYOUT.headerH, w: viewportW - mapW, h: bodyH, scrollable: true },
  ];
}

export function applyThemeVariables(root: HTMLElement): void {
  root.style.setProperty("--bg", PALETTE.background);
  root.style.setProperty("--panel", PALETTE.panel);
  root.style.setProperty("--panel-border", PALETTE.panelBorder);
  root.style.setProperty("--text", PALETTE.text);
  root.style.setProperty("--accent", PALETTE.accent);
  root.style.setProperty("--accent-text", PALETTE.accentText);
  root.style.setProperty("--info", PALETTE.info);
  root.style.setProperty("--warn", PALETTE.warn);
  root.style.setProperty("--error", PALETTE.error);
  root.style.setProperty("--stale", PALETTE.stale);
  root.style.setProperty("--header-h", `${LAYOUT.headerH}px`);
  root.style.setProperty("--controls-h", `${LAYOUT.controlsRowH}px`);
  root.style.setProperty(
    "--sidebar-w",
    `min(${LAYOUT.sidebarMaxW}px, ${LAYOUT.sidebarFraction * 100}vw)`,
  );
  root.style.setProperty("--map-pane", `${LAYOUT.mapPaneFraction * 100}%`);
}

// Internal senses: camera FPS, battery volts, and the backend log. The
// telemetry readout flags itself stale when the 1 Hz feed stops arriving.

import { LogMsg, TelemetryMsg } from "../protocol.js";
import { el } from "./dom.js";

export const STALE_AFTER_MS = 3000;
export const LOG_DISPLAY_CAP = 500;

export interface TelemetryPanel {
  el: HTMLElement;
  update(msg: TelemetryMsg): void;
  checkStale(): boolean;
}

export function createTelemetryPanel(now: () => number = () => Date.now()): TelemetryPanel {
  const fps = el("span", { className: "telemetry-value", text: "--" });
  const battery = el("span", { className: "telemetry-value", text: "--" });
  const uptime = el("span", { className: "telemetry-value", text: "--" });
  const stale = el("span", { className: "stale-badge", text: "stale", tooltip: "No telemetry for over 3 seconds" });
  stale.hidden = true;

  const root = el(
    "div",
    { className: "telemetry-grid" },
    el("span", { className: "telemetry-label", text: "FPS", tooltip: "Camera frames rendered per second" }),
    fps,
    el("span", { className: "telemetry-label", text: "Battery", tooltip: "Battery voltage" }),
    battery,
    el("span", { className: "telemetry-label", text: "Uptime", tooltip: "Simulated seconds since start" }),
    uptime,
    stale,
  );

  let lastAt: number | null = null;
  return {
    el: root,
    update(msg: TelemetryMsg) {
      fps.textContent = msg.fps.toFixed(1);
      battery.textContent = `${msg.battery_v.toFixed(2)} V`;
      uptime.textContent = `${Math.floor(msg.uptime_s)} s`;
      lastAt = now();
      stale.hidden = true;
      root.classList.remove("stale");
    },
    checkStale() {
      const isStale = lastAt !== null && now() - lastAt > STALE_AFTER_MS;
      stale.hidden = !isStale;
      root.classList.toggle("stale", isStale);
      return isStale;
    },
  };
}

export interface LogPanel {
  el: HTMLElement;
  append(entry: LogMsg): void;
}

export function createLogPanel(): LogPanel {
  const root = el("div", { className: "log-scroll", tooltip: "Backend log, newest at the bottom" });
  return {
    el: root,
    append(entry: LogMsg) {
      const line = el("div", {
        className: `log-entry log-${entry.level}`,
        text: `[${entry.t.toFixed(1)}s] ${entry.text}`,
      });
      root.append(line);
      while (root.childElementCount > LOG_DISPLAY_CAP) {
        root.firstElementChild?.remove();
      }
      root.scrollTop = root.scrollHeight;
    },
  };
}

// Console assembly: two pages (map setup, operate) behind top-corner
// navigation, camera front and center, collapsible side panels, keyboard
// control, and one WebSocket to the gateway.

import { KeyBinder, KEY_COMMANDS } from "./keys.js";
import { TeleopSocket } from "./net.js";
import { LogMsg, MapMsg, StateMsg, TelemetryMsg, TOPICS } from "./protocol.js";
import { UiSession } from "./session.js";
import { applyThemeVariables } from "./theme.js";
import { createActionMenu } from "./widgets/actions.js";
import { createCoefficientPanel } from "./widgets/coeffs.js";
import { el } from "./widgets/dom.js";
import { createHeadSlider } from "./widgets/headSlider.js";
import { createMapPage } from "./widgets/mapPage.js";
import { makePanel } from "./widgets/panels.js";
import { createLogPanel, createTelemetryPanel } from "./widgets/telemetry.js";

const MOVE_BUTTONS: { label: string; code: string; tooltip: string }[] = [
  { label: "▲ W", code: "KeyW", tooltip: "Walk forward one step (W)" },
  { label: "▼ S", code: "KeyS", tooltip: "Walk backward one step (S)" },
  { label: "↶ A", code: "KeyA", tooltip: "Turn left (A)" },
  { label: "↷ D", code: "KeyD", tooltip: "Turn right (D)" },
  { label: "⇦ Q", code: "KeyQ", tooltip: "Shift left without turning (Q)" },
  { label: "⇨ E", code: "KeyE", tooltip: "Shift right without turning (E)" },
];

const INSTRUCTIONS = [
  "W / S walk forward / backward",
  "A / D turn left / right",
  "Q / E shift left / right",
  "Arrow keys aim the camera",
  "One key press = one movement",
];

export interface Console {
  root: HTMLElement;
  session: UiSession;
  keyBinder: KeyBinder;
  banner: HTMLElement;
  showPage(page: "setup" | "operate"): void;
  publishCommand(payload: Record<string, unknown>): boolean;
  telemetryTick(): void;
}

export interface ConsoleOpts {
  root: HTMLElement;
  socket: TeleopSocket;
  session: UiSession;
  streamUrl?: string;
  now?: () => number;
}

export function buildConsole(opts: ConsoleOpts): Console {
  const { root, socket, session } = opts;
  applyThemeVariables(document.documentElement);
  root.classList.add("console-root");

  // -- connection banner -------------------------------------------------
  const banner = el("div", {
    className: "banner",
    text: "Connection to the robot lost — reconnecting…",
  });
  banner.hidden = true;
  const showBanner = (show: boolean) => {
    banner.hidden = !show;
  };
  socket.onConnectionChange((up) => showBanner(!up));

  const publishCommand = (payload: Record<string, unknown>): boolean => {
    const ok = socket.publish(TOPICS.cmd, payload);
    if (!ok) showBanner(true);
    return ok;
  };
  const publishEdit = (payload: Record<string, unknown>): boolean => {
    const ok = socket.publish(TOPICS.map, payload);
    if (!ok) showBanner(true);
    return ok;
  };

  // -- header with top-corner navigation ----------------------------------
  const setupBtn = el("button", { className: "control nav-btn nav-left", text: "Setup", tooltip: "Course map editor" });
  const operateBtn = el("button", { className: "control nav-btn nav-right", text: "Operate", tooltip: "Drive the robot" });
  const header = el(
    "header",
    { className: "header" },
    setupBtn,
    el("span", { className: "header-title", text: "huro-teleop operator console" }),
    operateBtn,
  );

  // -- operate page --------------------------------------------------------
  const camera = el("img", {
    className: "camera-img",
    tooltip: "Live robot camera",
    attrs: { src: opts.streamUrl ?? "/stream", alt: "robot camera" },
  });
  const cameraPane = el("div", { className: "camera-pane" }, camera);

  const controlsStrip = el("div", { className: "controls-strip" });
  for (const b of MOVE_BUTTONS) {
    const btn = el("button", { className: "control move-btn", text: b.label, tooltip: b.tooltip });
    btn.addEventListener("click", () => {
      publishCommand({ ...KEY_COMMANDS[b.code] });
    });
    controlsStrip.append(btn);
  }

  const sidebar = el("aside", { className: "sidebar" });
  const actionsPanel = makePanel(session, "actions", "Actions", "Posture and recovery actions");
  const actionMenu = createActionMenu(publishCommand);
  actionsPanel.body.append(actionMenu.el);

  const coeffPanel = makePanel(session, "coefficients", "Movement tuning", "Per-press movement magnitudes");
  const coeffs = createCoefficientPanel(session, publishCommand);
  coeffPanel.body.append(coeffs.el);

  const headPanel = makePanel(session, "head", "Camera aim", "Head pan position and reset");
  const headSlider = createHeadSlider(publishCommand);
  headPanel.body.append(headSlider.el);

  const telemetryPanel = makePanel(session, "telemetry", "Telemetry", "FPS, battery, uptime");
  const telemetry = createTelemetryPanel(opts.now);
  telemetryPanel.body.append(telemetry.el);

  const logPanel = makePanel(session, "log", "Log", "Backend messages");
  const log = createLogPanel();
  logPanel.body.append(log.el);

  const helpPanel = makePanel(session, "help", "Controls", "Keyboard reference for new operators", false);
  helpPanel.body.append(
    el("ul", { className: "help-list" }, ...INSTRUCTIONS.map((line) => el("li", { text: line }))),
  );

  sidebar.append(actionsPanel.el, coeffPanel.el, headPanel.el, telemetryPanel.el, logPanel.el, helpPanel.el);
  const operatePage = el("div", { className: "page operate" }, cameraPane, controlsStrip, sidebar);

  // -- setup page ----------------------------------------------------------
  const mapPage = createMapPage(publishEdit);
  const mapPane = el("div", { className: "map-pane" }, mapPage.el);
  const toolsPane = el("aside", { className: "tools-pane" });
  const setupLog = createLogPanel();
  const setupLogPanel = makePanel(session, "setup-log", "Log", "Backend messages (edit rejections land here)");
  setupLogPanel.body.append(setupLog.el);
  toolsPane.append(setupLogPanel.el);
  const setupPage = el("div", { className: "page setup" }, mapPane, toolsPane);

  // -- page switching -------------------------------------------------------
  const showPage = (page: "setup" | "operate") => {
    session.setPage(page);
    operatePage.hidden = page !== "operate";
    setupPage.hidden = page !== "setup";
    setupBtn.classList.toggle("active", page === "setup");
    operateBtn.classList.toggle("active", page === "operate");
  };
  setupBtn.addEventListener("click", () => showPage("setup"));
  operateBtn.addEventListener("click", () => showPage("operate"));

  root.append(header, banner, operatePage, setupPage);
  showPage(session.page);

  // -- subscriptions --------------------------------------------------------
  socket.subscribe(TOPICS.state, (msg) => {
    const state = msg as StateMsg;
    headSlider.update(state);
    mapPage.updateRobot(state);
  });
  socket.subscribe(TOPICS.telemetry, (msg) => telemetry.update(msg as TelemetryMsg));
  socket.subscribe(TOPICS.log, (msg) => {
    const entry = msg as LogMsg;
    log.append(entry);
    setupLog.append(entry);
  });
  socket.subscribe(TOPICS.map, (msg) => mapPage.renderMap(msg as MapMsg));

  // -- keyboard ---------------------------------------------------------------
  const keyBinder = new KeyBinder(
    (cmd) => publishCommand({ action: cmd.action, ...(cmd.value !== undefined ? { value: cmd.value } : {}) }),
    () => session.page === "operate",
  );

  return {
    root,
    session,
    keyBinder,
    banner,
    showPage,
    publishCommand,
    telemetryTick: () => telemetry.checkStale(),
  };
}

function bootstrap(): void {
  const root = document.getElementById("app");
  if (!root) return;
  const session = new UiSession(window.sessionStorage);
  const proto = location.protocol === "https:" ? "wss" : "ws";
  const socket = new TeleopSocket(`${proto}://${location.host}/ws`);
  const console_ = buildConsole({ root, socket, session });
  console_.keyBinder.attach(document);
  socket.connect();
  setInterval(() => console_.telemetryTick(), 1000);
}

bootstrap();

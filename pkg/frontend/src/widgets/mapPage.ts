// Bird's-eye course editor. The canvas always renders the latest MapMsg
// (the gateway re-broadcasts the full map after every accepted edit), so
// what the operator sees is what the robot is actually driving through.
// Clicks place obstacles, drags move them or the start pose; the robot
// marker follows the live state feed.

import { MapMsg, ObstacleMsg, StateMsg } from "../protocol.js";
import { el } from "./dom.js";

export type MapTool = "select" | "rect" | "circle";

const CANVAS_W = 420;
const CANVAS_H = 640;
const PAD = 16;
const NEW_RECT_SIZE = 0.4;
const NEW_CIRCLE_R = 0.2;
const ROBOT_MARKER_M = 0.12;

export interface MapPage {
  el: HTMLElement;
  canvas: HTMLCanvasElement;
  toolButtons: Record<MapTool, HTMLButtonElement>;
  renderMap(msg: MapMsg): void;
  updateRobot(state: StateMsg): void;
  setTool(tool: MapTool): void;
  toCanvas(x: number, y: number): [number, number];
}

export function createMapPage(
  publishEdit: (payload: Record<string, unknown>) => boolean,
): MapPage {
  const canvas = el("canvas", {
    className: "map-canvas",
    tooltip: "Course from above: click to place, drag to move obstacles or the start pose",
    attrs: { width: String(CANVAS_W), height: String(CANVAS_H) },
  });
  const ctx = canvas.getContext("2d");

  let map: MapMsg | null = null;
  let robot: { x: number; y: number; theta: number } | null = null;
  let tool: MapTool = "select";
  let placed = 0;
  let drag:
    | { kind: "obstacle"; id: string; fromX: number; fromY: number; dx: number; dy: number }
    | { kind: "robot"; x: number; y: number }
    | null = null;

  const scaleFor = (m: MapMsg) =>
    Math.min((CANVAS_W - 2 * PAD) / m.course.width, (CANVAS_H - 2 * PAD) / m.course.height);

  const toCanvas = (x: number, y: number): [number, number] => {
    if (!map) return [PAD, CANVAS_H - PAD];
    const s = scaleFor(map);
    return [PAD + x * s, CANVAS_H - PAD - y * s];
  };

  const toWorld = (px: number, py: number): [number, number] => {
    if (!map) return [0, 0];
    const s = scaleFor(map);
    return [(px - PAD) / s, (CANVAS_H - PAD - py) / s];
  };

  const obstacleAt = (x: number, y: number): ObstacleMsg | null => {
    if (!map) return null;
    for (const o of [...map.course.obstacles].reverse()) {
      if (o.shape === "rect") {
        if (x >= o.x && x <= o.x + o.w && y >= o.y && y <= o.y + o.h) return o;
      } else if (Math.hypot(x - o.cx, y - o.cy) <= o.r) {
        return o;
      }
    }
    return null;
  };

  function draw(): void {
    if (!ctx || !map) return;
    const s = scaleFor(map);
    ctx.clearRect(0, 0, CANVAS_W, CANVAS_H);

    // course bounds
    const [bx, by] = toCanvas(0, map.course.height);
    ctx.strokeStyle = "#e8eef7";
    ctx.strokeRect(bx, by, map.course.width * s, map.course.height * s);

    // finish line
    const [fx0, fy] = toCanvas(0, map.course.finish_y);
    const [fx1] = toCanvas(map.course.width, map.course.finish_y);
    ctx.strokeStyle = "#ff8c1a";
    ctx.beginPath();
    ctx.moveTo(fx0, fy);
    ctx.lineTo(fx1, fy);
    ctx.stroke();

    // obstacles (dragged one drawn at its ghost offset)
    for (const o of map.course.obstacles) {
      const ghost = drag?.kind === "obstacle" && drag.id === o.id ? drag : null;
      ctx.fillStyle = "#9fd0ff";
      if (o.shape === "rect") {
        const [px, py] = toCanvas(o.x + (ghost?.dx ?? 0), o.y + o.h + (ghost?.dy ?? 0));
        ctx.fillRect(px, py, o.w * s, o.h * s);
      } else {
        const [px, py] = toCanvas(o.cx + (ghost?.dx ?? 0), o.cy + (ghost?.dy ?? 0));
        ctx.beginPath();
        ctx.arc(px, py, o.r * s, 0, Math.PI * 2);
        ctx.fill();
      }
    }

    // start pose marker
    const start = drag?.kind === "robot" ? drag : map.course.start;
    const [sx, sy] = toCanvas(start.x, start.y);
    ctx.strokeStyle = "#ffc14d";
    ctx.beginPath();
    ctx.arc(sx, sy, ROBOT_MARKER_M * s, 0, Math.PI * 2);
    ctx.stroke();

    // live robot marker with a heading tick
    const pose = robot ?? map.robot;
    const [rx, ry] = toCanvas(pose.x, pose.y);
    ctx.fillStyle = "#ff8c1a";
    ctx.beginPath();
    ctx.arc(rx, ry, ROBOT_MARKER_M * s, 0, Math.PI * 2);
    ctx.fill();
    ctx.strokeStyle = "#ff8c1a";
    ctx.beginPath();
    ctx.moveTo(rx, ry);
    ctx.lineTo(rx + Math.cos(pose.theta) * 2 * ROBOT_MARKER_M * s, ry - Math.sin(pose.theta) * 2 * ROBOT_MARKER_M * s);
    ctx.stroke();
  }

  const eventWorld = (ev: MouseEvent): [number, number] => {
    const rect = canvas.getBoundingClientRect();
    return toWorld(ev.clientX - rect.left, ev.clientY - rect.top);
  };

  canvas.addEventListener("mousedown", (ev) => {
    if (!map) return;
    const [x, y] = eventWorld(ev as MouseEvent);
    if (tool === "rect") {
      placed += 1;
      publishEdit({
        action: "place_obstacle",
        obstacle: {
          id: `obs-${placed}`,
          shape: "rect",
          x: x - NEW_RECT_SIZE / 2,
          y: y - NEW_RECT_SIZE / 2,
          w: NEW_RECT_SIZE,
          h: NEW_RECT_SIZE,
        },
      });
      return;
    }
    if (tool === "circle") {
      placed += 1;
      publishEdit({
        action: "place_obstacle",
        obstacle: { id: `obs-${placed}`, shape: "circle", cx: x, cy: y, r: NEW_CIRCLE_R },
      });
      return;
    }
    const hit = obstacleAt(x, y);
    if (hit) {
      drag = { kind: "obstacle", id: hit.id, fromX: x, fromY: y, dx: 0, dy: 0 };
      return;
    }
    const start = map.course.start;
    if (Math.hypot(x - start.x, y - start.y) <= 3 * ROBOT_MARKER_M) {
      drag = { kind: "robot", x, y };
    }
  });

  canvas.addEventListener("mousemove", (ev) => {
    if (!drag) return;
    const [x, y] = eventWorld(ev as MouseEvent);
    if (drag.kind === "obstacle") {
      drag.dx = x - drag.fromX;
      drag.dy = y - drag.fromY;
    } else {
      drag.x = x;
      drag.y = y;
    }
    draw();
  });

  canvas.addEventListener("mouseup", () => {
    if (!drag || !map) return;
    if (drag.kind === "obstacle") {
      if (drag.dx !== 0 || drag.dy !== 0) {
        publishEdit({ action: "move_obstacle", id: drag.id, dx: drag.dx, dy: drag.dy });
      }
    } else {
      publishEdit({
        action: "set_start_pose",
        pose: { x: drag.x, y: drag.y, theta: map.course.start.theta },
      });
    }
    drag = null;
    draw();
  });

  const toolButtons = {} as Record<MapTool, HTMLButtonElement>;
  const toolbar = el("div", { className: "map-toolbar" });
  const toolDefs: { tool: MapTool; label: string; tooltip: string }[] = [
    { tool: "select", label: "Drag", tooltip: "Drag obstacles or the start marker to new spots" },
    { tool: "rect", label: "Add box", tooltip: "Click the map to place a box obstacle" },
    { tool: "circle", label: "Add circle", tooltip: "Click the map to place a round obstacle" },
  ];
  const setTool = (t: MapTool) => {
    tool = t;
    for (const d of toolDefs) toolButtons[d.tool].classList.toggle("active", d.tool === t);
  };
  for (const d of toolDefs) {
    const btn = el("button", { className: "control tool-btn", text: d.label, tooltip: d.tooltip });
    btn.addEventListener("click", () => setTool(d.tool));
    toolButtons[d.tool] = btn;
    toolbar.append(btn);
  }
  setTool("select");

  const root = el("div", { className: "map-page" }, toolbar, canvas);
  return {
    el: root,
    canvas,
    toolButtons,
    setTool,
    toCanvas,
    renderMap(msg: MapMsg) {
      map = msg;
      draw();
    },
    updateRobot(state: StateMsg) {
      robot = { x: state.x, y: state.y, theta: state.theta };
      draw();
    },
  };
}

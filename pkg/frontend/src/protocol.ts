// Wire contract with the gateway: one JSON envelope per WebSocket text
// frame. Kept in lockstep with the server's protocol module by hand; the
// console has no build-time coupling to it.

export const TOPICS = {
  cmd: "/teleop/cmd",
  state: "/teleop/state",
  telemetry: "/teleop/telemetry",
  log: "/teleop/log",
  map: "/teleop/map",
} as const;

export type Op = "advertise" | "unadvertise" | "publish" | "subscribe" | "unsubscribe" | "status";

export interface Envelope {
  op: Op;
  topic: string;
  id?: string;
  msg?: unknown;
}

export interface Coefficients {
  step_m: number;
  turn_rad: number;
  shift_m: number;
}

export const COEFF_BOUNDS: Record<keyof Coefficients, [number, number]> = {
  step_m: [0.01, 0.5],
  turn_rad: [0.01, 1.57],
  shift_m: [0.01, 0.3],
};

export const DEFAULT_COEFFICIENTS: Coefficients = { step_m: 0.05, turn_rad: 0.15, shift_m: 0.05 };

export const HEAD_PAN_LIMIT = 1.2;
export const HEAD_TILT_LIMIT = 0.6;
// radians added per arrow-key press
export const HEAD_KEY_STEP = 0.1;

export function clamp(v: number, lo: number, hi: number): number {
  return v < lo ? lo : v > hi ? hi : v;
}

export function clampCoefficients(c: Coefficients): Coefficients {
  return {
    step_m: clamp(c.step_m, ...COEFF_BOUNDS.step_m),
    turn_rad: clamp(c.turn_rad, ...COEFF_BOUNDS.turn_rad),
    shift_m: clamp(c.shift_m, ...COEFF_BOUNDS.shift_m),
  };
}

export interface StateMsg {
  x: number;
  y: number;
  theta: number;
  head_pan: number;
  head_tilt: number;
  posture: string;
  coefficients: Coefficients;
  contact_count: number;
  finished: boolean;
}

export interface TelemetryMsg {
  fps: number;
  battery_v: number;
  uptime_s: number;
}

export interface LogMsg {
  level: "info" | "warn" | "error";
  text: string;
  t: number;
}

export interface RectObstacle {
  id: string;
  shape: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface CircleObstacle {
  id: string;
  shape: "circle";
  cx: number;
  cy: number;
  r: number;
}

export type ObstacleMsg = RectObstacle | CircleObstacle;

export interface MapMsg {
  course: {
    width: number;
    height: number;
    start: { x: number; y: number; theta: number };
    finish_y: number;
    obstacles: ObstacleMsg[];
  };
  robot: { x: number; y: number; theta: number };
}

export function encodeEnvelope(e: Envelope): string {
  const doc: Record<string, unknown> = { op: e.op, topic: e.topic };
  if (e.id !== undefined) doc.id = e.id;
  if (e.op === "publish" || e.op === "status") doc.msg = e.msg ?? null;
  return JSON.stringify(doc);
}

// Lenient client-side decode: anything that is not an envelope-shaped
// object becomes null (the console just drops it; the gateway is the
// strict side).
export function decodeEnvelope(text: string): Envelope | null {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) return null;
  const { op, topic, id, msg } = doc as Record<string, unknown>;
  if (typeof op !== "string" || typeof topic !== "string" || !topic.startsWith("/")) return null;
  const env: Envelope = { op: op as Op, topic };
  if (typeof id === "string") env.id = id;
  if (msg !== undefined) env.msg = msg;
  return env;
}

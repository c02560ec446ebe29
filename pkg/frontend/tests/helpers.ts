// Shared fakes: a recording WebSocket, a recording canvas context, and a
// sample map message mirroring the gateway's bundled course.

import { vi } from "vitest";
import { SocketLike } from "../src/net.js";
import { MapMsg } from "../src/protocol.js";

export class FakeSocket implements SocketLike {
  sent: string[] = [];
  closed = false;
  onopen: ((ev?: unknown) => void) | null = null;
  onclose: ((ev?: unknown) => void) | null = null;
  onmessage: ((ev: { data: unknown }) => void) | null = null;
  onerror: ((ev?: unknown) => void) | null = null;

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.closed = true;
    this.onclose?.();
  }

  open(): void {
    this.onopen?.();
  }

  receive(doc: unknown): void {
    this.onmessage?.({ data: JSON.stringify(doc) });
  }

  sentEnvelopes(): { op: string; topic: string; msg?: unknown }[] {
    return this.sent.map((s) => JSON.parse(s));
  }
}

export function makeSocketFactory() {
  const sockets: FakeSocket[] = [];
  const factory = () => {
    const s = new FakeSocket();
    sockets.push(s);
    return s;
  };
  return { sockets, factory };
}

export interface CtxCall {
  fn: string;
  args: unknown[];
}

export function stubCanvas() {
  const calls: CtxCall[] = [];
  const record =
    (fn: string) =>
    (...args: unknown[]) => {
      calls.push({ fn, args });
    };
  const ctx = {
    fillStyle: "",
    strokeStyle: "",
    clearRect: record("clearRect"),
    strokeRect: record("strokeRect"),
    fillRect: record("fillRect"),
    beginPath: record("beginPath"),
    arc: record("arc"),
    fill: record("fill"),
    stroke: record("stroke"),
    moveTo: record("moveTo"),
    lineTo: record("lineTo"),
  };
  vi.spyOn(HTMLCanvasElement.prototype, "getContext").mockReturnValue(
    ctx as unknown as CanvasRenderingContext2D,
  );
  return { calls, ctx };
}

export const SAMPLE_MAP: MapMsg = {
  course: {
    width: 3.0,
    height: 6.0,
    start: { x: 0.75, y: 0.5, theta: 1.5707963267948966 },
    finish_y: 5.5,
    obstacles: [
      { id: "gate_a", shape: "rect", x: 1.3, y: 1.5, w: 1.7, h: 0.3 },
      { id: "barrel", shape: "circle", cx: 1.5, cy: 4.3, r: 0.22 },
    ],
  },
  robot: { x: 0.75, y: 0.5, theta: 1.5707963267948966 },
};

export function sampleState(overrides: Partial<import("../src/protocol.js").StateMsg> = {}) {
  return {
    x: 0.75,
    y: 0.5,
    theta: 1.5707963267948966,
    head_pan: 0,
    head_tilt: 0,
    posture: "standing",
    coefficients: { step_m: 0.05, turn_rad: 0.15, shift_m: 0.05 },
    contact_count: 0,
    finished: false,
    ...overrides,
  };
}

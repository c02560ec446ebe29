// WebSocket client for the gateway: subscribe/publish over JSON envelopes,
// reconnect with exponential backoff, re-subscribing everything after a
// reconnect (the gateway keeps no session memory).

import { Envelope, decodeEnvelope, encodeEnvelope } from "./protocol.js";

export const BACKOFF_BASE_MS = 1000;
export const BACKOFF_CAP_MS = 8000;

export function backoffDelayMs(attempt: number): number {
  // attempt 0 -> 1s, 1 -> 2s, 2 -> 4s, then capped at 8s
  return Math.min(BACKOFF_CAP_MS, BACKOFF_BASE_MS * 2 ** attempt);
}

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;
export type MessageHandler = (msg: unknown, envelope: Envelope) => void;

interface Options {
  socketFactory?: SocketFactory;
  schedule?: (fn: () => void, ms: number) => unknown;
}

export class TeleopSocket {
  private socket: SocketLike | null = null;
  private connected = false;
  private attempts = 0;
  private closedByUs = false;
  private subscriptions = new Map<string, MessageHandler[]>();
  private connectionListeners: ((up: boolean) => void)[] = [];
  private factory: SocketFactory;
  private schedule: (fn: () => void, ms: number) => unknown;

  constructor(private url: string, opts: Options = {}) {
    this.factory = opts.socketFactory ?? ((u) => new WebSocket(u) as unknown as SocketLike);
    this.schedule = opts.schedule ?? ((fn, ms) => setTimeout(fn, ms));
  }

  get isConnected(): boolean {
    return this.connected;
  }

  onConnectionChange(cb: (up: boolean) => void): void {
    this.connectionListeners.push(cb);
  }

  connect(): void {
    this.closedByUs = false;
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.connected = true;
      this.attempts = 0;
      for (const topic of this.subscriptions.keys()) {
        socket.send(encodeEnvelope({ op: "subscribe", topic }));
      }
      this.connectionListeners.forEach((cb) => cb(true));
    };
    socket.onclose = () => {
      const wasConnected = this.connected;
      this.connected = false;
      this.socket = null;
      if (wasConnected) this.connectionListeners.forEach((cb) => cb(false));
      if (!this.closedByUs) {
        const delay = backoffDelayMs(this.attempts);
        this.attempts += 1;
        this.schedule(() => this.connect(), delay);
      }
    };
    socket.onerror = () => {
      // close handler owns reconnection
    };
    socket.onmessage = (ev) => {
      if (typeof ev.data !== "string") return;
      const envelope = decodeEnvelope(ev.data);
      if (!envelope || envelope.op !== "publish") return;
      const handlers = this.subscriptions.get(envelope.topic);
      if (handlers) handlers.forEach((h) => h(envelope.msg, envelope));
    };
  }

  close(): void {
    this.closedByUs = true;
    this.socket?.close();
  }

  subscribe(topic: string, handler: MessageHandler): void {
    const handlers = this.subscriptions.get(topic);
    if (handlers) {
      handlers.push(handler);
      return;
    }
    this.subscriptions.set(topic, [handler]);
    if (this.connected && this.socket) {
      this.socket.send(encodeEnvelope({ op: "subscribe", topic }));
    }
  }

  /** Publish one message; returns false (and publishes nothing) while the
   * link is down so callers can surface a banner instead of crashing. */
  publish(topic: string, msg: unknown): boolean {
    if (!this.connected || !this.socket) return false;
    this.socket.send(encodeEnvelope({ op: "publish", topic, msg }));
    return true;
  }
}

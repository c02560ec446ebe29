// Keyboard control: WASD moves the body, Q/E shift it sideways, arrow keys
// aim the camera. One physical key press is exactly one command — holding
// a key repeats nothing (one press, one movement).

import { HEAD_KEY_STEP } from "./protocol.js";

export interface KeyCommand {
  action: string;
  value?: number;
}

export const KEY_COMMANDS: Record<string, KeyCommand> = {
  KeyW: { action: "walk_forward" },
  KeyS: { action: "walk_backward" },
  KeyA: { action: "turn_left" },
  KeyD: { action: "turn_right" },
  KeyQ: { action: "shift_left" },
  KeyE: { action: "shift_right" },
  ArrowLeft: { action: "head_pan", value: HEAD_KEY_STEP },
  ArrowRight: { action: "head_pan", value: -HEAD_KEY_STEP },
  ArrowUp: { action: "head_tilt", value: HEAD_KEY_STEP },
  ArrowDown: { action: "head_tilt", value: -HEAD_KEY_STEP },
};

function isTypingTarget(target: EventTarget | null): boolean {
  if (!(target instanceof HTMLElement)) return false;
  const tag = target.tagName;
  return tag === "INPUT" || tag === "TEXTAREA" || tag === "SELECT" || target.isContentEditable;
}

export class KeyBinder {
  private held = new Set<string>();

  constructor(
    private publishCommand: (cmd: KeyCommand) => void,
    private active: () => boolean = () => true,
  ) {}

  attach(target: { addEventListener: Document["addEventListener"] }): void {
    target.addEventListener("keydown", (ev) => this.onKeyDown(ev as KeyboardEvent));
    target.addEventListener("keyup", (ev) => this.onKeyUp(ev as KeyboardEvent));
    target.addEventListener("blur", () => this.held.clear());
  }

  onKeyDown(ev: KeyboardEvent): void {
    if (!this.active() || isTypingTarget(ev.target)) return;
    const cmd = KEY_COMMANDS[ev.code];
    if (!cmd) return;
    ev.preventDefault();
    // ev.repeat covers OS auto-repeat; the held set covers browsers that
    // fire repeats without the flag
    if (ev.repeat || this.held.has(ev.code)) return;
    this.held.add(ev.code);
    this.publishCommand(cmd);
  }

  onKeyUp(ev: KeyboardEvent): void {
    this.held.delete(ev.code);
  }
}

// Head-pan slider: mirrors the simulator's reported pan angle so the
// operator always knows where the camera points relative to the body, and
// dragging it publishes pan deltas. The reset button re-centers both axes.

import { HEAD_PAN_LIMIT, StateMsg } from "../protocol.js";
import { el } from "./dom.js";

export const SLIDER_QUANTUM = 0.05;

export interface HeadSlider {
  el: HTMLElement;
  slider: HTMLInputElement;
  reset: HTMLButtonElement;
  update(state: StateMsg): void;
}

export function createHeadSlider(
  publishCommand: (payload: Record<string, unknown>) => boolean,
): HeadSlider {
  let reference = 0;

  const slider = el("input", {
    className: "head-slider",
    tooltip: "Camera pan relative to the body; drag to aim",
    attrs: {
      type: "range",
      min: String(-HEAD_PAN_LIMIT),
      max: String(HEAD_PAN_LIMIT),
      step: String(SLIDER_QUANTUM),
      value: "0",
    },
  });
  const readout = el("span", { className: "head-readout", text: "0.00 rad" });
  const reset = el("button", {
    className: "control head-reset",
    text: "Center",
    tooltip: "Snap the camera back to straight ahead",
  });

  slider.addEventListener("input", () => {
    const value = Number(slider.value);
    const delta = value - reference;
    if (delta !== 0) {
      publishCommand({ action: "head_pan", value: delta });
      reference = value;
    }
  });
  reset.addEventListener("click", () => {
    publishCommand({ action: "head_reset" });
  });

  const update = (state: StateMsg) => {
    reference = state.head_pan;
    slider.value = String(state.head_pan);
    readout.textContent = `${state.head_pan.toFixed(2)} rad`;
  };

  const root = el(
    "div",
    { className: "head-panel" },
    el("label", { className: "head-label", text: "Head pan" }, slider),
    readout,
    reset,
  );
  return { el: root, slider, reset, update };
}

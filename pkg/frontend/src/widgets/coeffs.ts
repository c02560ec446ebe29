// Movement-coefficient inputs: step length, turn angle, shift length.
// Edits clamp client-side, persist in the browser session, and publish a
// set_coefficients command so the very next key press uses the new value.

import { COEFF_BOUNDS, Coefficients } from "../protocol.js";
import { UiSession } from "../session.js";
import { el } from "./dom.js";

const FIELDS: { key: keyof Coefficients; label: string; tooltip: string }[] = [
  { key: "step_m", label: "Step (m)", tooltip: "Distance of one walk press, meters" },
  { key: "turn_rad", label: "Turn (rad)", tooltip: "Angle of one turn press, radians" },
  { key: "shift_m", label: "Shift (m)", tooltip: "Distance of one sideways shift press, meters" },
];

export interface CoefficientPanel {
  el: HTMLElement;
  inputs: Record<keyof Coefficients, HTMLInputElement>;
}

export function createCoefficientPanel(
  session: UiSession,
  publishCommand: (payload: Record<string, unknown>) => boolean,
): CoefficientPanel {
  const inputs = {} as Record<keyof Coefficients, HTMLInputElement>;
  const root = el("div", { className: "coeff-grid" });

  const showValues = (c: Coefficients) => {
    for (const f of FIELDS) inputs[f.key].value = String(c[f.key]);
  };

  for (const f of FIELDS) {
    const [lo, hi] = COEFF_BOUNDS[f.key];
    const input = el("input", {
      className: "coeff-input",
      tooltip: f.tooltip,
      attrs: { type: "number", step: "0.01", min: String(lo), max: String(hi), name: f.key },
    });
    inputs[f.key] = input;
    input.addEventListener("change", () => {
      const parsed = Number(input.value);
      if (input.value.trim() === "" || !Number.isFinite(parsed)) {
        input.classList.add("invalid");
        return;
      }
      input.classList.remove("invalid");
      const next = { ...session.coefficients, [f.key]: parsed };
      const clamped = session.setCoefficients(next);
      showValues(clamped);
      publishCommand({ action: "set_coefficients", coefficients: clamped });
    });
    root.append(el("label", { className: "coeff-label", text: f.label, tooltip: f.tooltip }, input));
  }

  showValues(session.coefficients);
  return { el: root, inputs };
}

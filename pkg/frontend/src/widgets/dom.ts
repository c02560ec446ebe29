// Tiny DOM construction helper; every interactive control gets a tooltip
// via opts.tooltip so non-experts can hover to learn what a button does.

export interface ElOpts {
  className?: string;
  text?: string;
  tooltip?: string;
  attrs?: Record<string, string>;
}

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  opts: ElOpts = {},
  ...children: (HTMLElement | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (opts.className) node.className = opts.className;
  if (opts.text !== undefined) node.textContent = opts.text;
  if (opts.tooltip) node.title = opts.tooltip;
  if (opts.attrs) {
    for (const [k, v] of Object.entries(opts.attrs)) node.setAttribute(k, v);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

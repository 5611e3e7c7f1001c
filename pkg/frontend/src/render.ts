// SVG strings for the canvas. Rendering stays a pure function of the
// editor state so tests can assert on markup without a DOM.

import { Dag, VariableStatus } from "./dag.js";
import { Point, positions } from "./layout.js";

export type DiagramStyle = "classic" | "sem";

export interface RenderOptions {
  style?: DiagramStyle;
  // Edge keys "source target" -> stroke color (causal/biasing coloring).
  edgeColors?: ReadonlyMap<string, string>;
  selected?: string | null;
}

const FILL: Record<VariableStatus, string> = {
  exposure: "#c8f0c8",
  outcome: "#c8dcf5",
  adjusted: "#f5f5f5",
  unobserved: "#e6e6e6",
  other: "#ffffff",
};

export const SCALE = 90;
export const MARGIN = 60;

function escape(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fixed(value: number): string {
  return value.toFixed(1);
}

export interface Placed {
  readonly width: number;
  readonly height: number;
  readonly place: (name: string) => Point;
  readonly toModel: (px: number, py: number) => Point;
}

// Shared by the renderer and the pointer handlers so hit testing and
// drawing agree on where every vertex sits.
export function placed(g: Dag): Placed {
  const pos = positions(g);
  let minX = 0;
  let minY = 0;
  let maxX = 0;
  let maxY = 0;
  let first = true;
  for (const [x, y] of pos.values()) {
    if (first) {
      minX = maxX = x;
      minY = maxY = y;
      first = false;
    } else {
      minX = Math.min(minX, x);
      maxX = Math.max(maxX, x);
      minY = Math.min(minY, y);
      maxY = Math.max(maxY, y);
    }
  }
  return {
    width: (maxX - minX) * SCALE + 2 * MARGIN,
    height: (maxY - minY) * SCALE + 2 * MARGIN,
    place: (name) => {
      const p = pos.get(name)!;
      return [(p[0] - minX) * SCALE + MARGIN, (p[1] - minY) * SCALE + MARGIN];
    },
    toModel: (px, py) => [(px - MARGIN) / SCALE + minX, (py - MARGIN) / SCALE + minY],
  };
}

export function renderDag(g: Dag, options: RenderOptions = {}): string {
  const style = options.style ?? "classic";
  if (!g.variables.length) {
    return '<svg xmlns="http://www.w3.org/2000/svg" width="40" height="40"></svg>';
  }
  const frame = placed(g);
  const radius = style === "sem" ? 24 : 6;
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width.toFixed(0)}" ` +
      `height="${frame.height.toFixed(0)}" viewBox="0 0 ${frame.width.toFixed(0)} ${frame.height.toFixed(0)}">`,
    "<defs><marker id='arrow' markerWidth='10' markerHeight='8' refX='9' refY='4' " +
      "orient='auto'><path d='M0,0 L10,4 L0,8 z'/></marker></defs>",
  ];
  for (const [u, v] of g.edges) {
    const [x1, y1] = frame.place(u);
    const [x2, y2] = frame.place(v);
    const dx = x2 - x1;
    const dy = y2 - y1;
    const length = Math.max(Math.hypot(dx, dy), 1e-9);
    const sx = x1 + (dx / length) * radius;
    const sy = y1 + (dy / length) * radius;
    const tx = x2 - (dx / length) * (radius + 4);
    const ty = y2 - (dy / length) * (radius + 4);
    const stroke = options.edgeColors?.get(u + " " + v) ?? "black";
    parts.push(
      `<line data-edge="${escape(u)} ${escape(v)}" x1="${fixed(sx)}" y1="${fixed(sy)}" ` +
        `x2="${fixed(tx)}" y2="${fixed(ty)}" stroke="${stroke}" marker-end="url(#arrow)"/>`,
    );
  }
  for (const v of g.variables) {
    const [x, y] = frame.place(v.name);
    const label = escape(v.name);
    const fill = FILL[v.status];
    const ring = options.selected === v.name ? ' stroke-width="3" stroke-dasharray="4 2"' : "";
    if (style === "sem") {
      parts.push(
        `<ellipse data-vertex="${label}" cx="${fixed(x)}" cy="${fixed(y)}" rx="${radius}" ry="18" ` +
          `fill="${fill}" stroke="black"${ring}/>`,
      );
      parts.push(
        `<text x="${fixed(x)}" y="${fixed(y + 4)}" text-anchor="middle" font-size="12">${label}</text>`,
      );
    } else {
      parts.push(
        `<circle data-vertex="${label}" cx="${fixed(x)}" cy="${fixed(y)}" r="${radius}" ` +
          `fill="${fill}" stroke="black"${ring}/>`,
      );
      parts.push(
        `<text x="${fixed(x)}" y="${fixed(y - 10)}" text-anchor="middle" font-size="12">${label}</text>`,
      );
    }
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

// Moral and correlation views reuse the DAG's positions; only the line
// set differs, and nothing is clickable.
export function renderUndirected(g: Dag, lines: readonly (readonly [string, string])[]): string {
  if (!g.variables.length) {
    return '<svg xmlns="http://www.w3.org/2000/svg" width="40" height="40"></svg>';
  }
  const frame = placed(g);
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width.toFixed(0)}" ` +
      `height="${frame.height.toFixed(0)}" viewBox="0 0 ${frame.width.toFixed(0)} ${frame.height.toFixed(0)}">`,
  ];
  for (const [a, b] of lines) {
    const [x1, y1] = frame.place(a);
    const [x2, y2] = frame.place(b);
    parts.push(
      `<line x1="${fixed(x1)}" y1="${fixed(y1)}" x2="${fixed(x2)}" y2="${fixed(y2)}" stroke="black"/>`,
    );
  }
  for (const v of g.variables) {
    const [x, y] = frame.place(v.name);
    const label = escape(v.name);
    parts.push(`<circle cx="${fixed(x)}" cy="${fixed(y)}" r="6" fill="${FILL[v.status]}" stroke="black"/>`);
    parts.push(`<text x="${fixed(x)}" y="${fixed(y - 10)}" text-anchor="middle" font-size="12">${label}</text>`);
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

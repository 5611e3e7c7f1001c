// Fallback canvas positions when the model code carries no coordinates:
// longest-path rank gives the row, declaration order the slot, matching
// the backend's layered layout so both sides draw the same picture.

import { Dag } from "./dag.js";

export type Point = readonly [number, number];

export function layeredLayout(g: Dag): Map<string, Point> {
  const rank = new Map<string, number>();
  const depth = (name: string): number => {
    let r = rank.get(name);
    if (r === undefined) {
      const parents = g.parents(name);
      r = parents.length ? 1 + Math.max(...parents.map(depth)) : 0;
      rank.set(name, r);
    }
    return r;
  };
  for (const name of g.names) depth(name);
  const rows = new Map<number, string[]>();
  for (const name of g.names) {
    const level = rank.get(name)!;
    const row = rows.get(level);
    if (row) row.push(name);
    else rows.set(level, [name]);
  }
  const out = new Map<string, Point>();
  for (const level of [...rows.keys()].sort((a, b) => a - b)) {
    const row = rows.get(level)!;
    const offset = -(row.length - 1) / 2;
    row.forEach((name, slot) => out.set(name, [offset + slot, level]));
  }
  return out;
}

export function positions(g: Dag): Map<string, Point> {
  const stored = new Map<string, Point>();
  for (const v of g.variables) {
    if (v.layout) stored.set(v.name, v.layout);
  }
  if (g.variables.length && stored.size === g.variables.length) return stored;
  return layeredLayout(g);
}

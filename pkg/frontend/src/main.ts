// Browser entry point: binds the state machine to the page. All logic
// lives in EditorState; this file only moves strings and events around.

import { HttpBackend } from "./backend.js";
import { describeImplications, describeInstruments, describeSets, EditorState } from "./editor.js";
import { placed } from "./render.js";

const INITIAL =
  "E E @-2.2,1.6\nD O @1.4,1.6\nA 1 @-2.2,-1.5\nB 1 @1.4,-1.5\nZ 1 @-0.3,-0.1\n\nE D\nA E Z\nB D Z\nZ E D\n";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

const state = new EditorState(new HttpBackend());

const canvas = byId<HTMLDivElement>("canvas");
const codeBox = byId<HTMLTextAreaElement>("code");
const notice = byId<HTMLDivElement>("notice");

function fill(id: string, lines: string[]): void {
  byId<HTMLUListElement>(id).innerHTML = lines.map((line) => `<li>${line}</li>`).join("");
}

function rerender(): void {
  canvas.innerHTML = state.renderSvg();
  codeBox.value = state.modelCodeText;
  notice.textContent = state.notice ?? "";
  fill("adjustment", describeSets(state.adjustment));
  fill("instruments", describeInstruments(state.instruments));
  fill("implications", describeImplications(state.implications));
  byId<HTMLButtonElement>("undo").disabled = !state.canUndo;
  byId<HTMLButtonElement>("redo").disabled = !state.canRedo;
}

function after(step: Promise<void>): void {
  rerender();
  step.then(() => {
    resolveDialog();
    rerender();
  });
}

// Dialogs surface as window.prompt so the shell stays chromeless.
function resolveDialog(): void {
  const dialog = state.dialog;
  if (!dialog) return;
  const message = dialog.kind === "new" ? "name for the new variable" : `rename ${dialog.target}`;
  const answer = window.prompt(message, dialog.kind === "rename" ? dialog.target : "");
  if (answer === null) {
    state.cancelDialog();
    return;
  }
  after(state.submitDialog(answer));
}

function vertexAt(target: EventTarget | null): string | null {
  return target instanceof Element ? target.getAttribute("data-vertex") : null;
}

function modelPoint(event: MouseEvent): readonly [number, number] {
  const box = canvas.getBoundingClientRect();
  return placed(state.dag).toModel(event.clientX - box.left, event.clientY - box.top);
}

canvas.addEventListener("mouseover", (event) => {
  const name = vertexAt(event.target);
  if (name) state.hovered = name;
});

canvas.addEventListener("mouseout", (event) => {
  if (vertexAt(event.target)) state.hovered = null;
});

canvas.addEventListener("dblclick", (event) => {
  const name = vertexAt(event.target);
  if (name) after(state.doubleClickVertex(name));
  else state.doubleClickCanvas(modelPoint(event));
  resolveDialog();
  rerender();
});

let dragging: string | null = null;
canvas.addEventListener("pointerdown", (event) => {
  dragging = vertexAt(event.target);
});
canvas.addEventListener("pointerup", (event) => {
  if (dragging && state.viewMode === "dag") {
    const [x, y] = modelPoint(event);
    after(state.dragVertex(dragging, [Math.round(x * 10) / 10, Math.round(y * 10) / 10]));
  }
  dragging = null;
});

document.addEventListener("keydown", (event) => {
  if (event.target instanceof HTMLTextAreaElement || event.target instanceof HTMLInputElement) return;
  after(state.handleKey(event.key));
});

byId<HTMLButtonElement>("update").addEventListener("click", () => after(state.loadCode(codeBox.value)));
byId<HTMLButtonElement>("undo").addEventListener("click", () => after(state.undo()));
byId<HTMLButtonElement>("redo").addEventListener("click", () => after(state.redo()));
byId<HTMLInputElement>("highlights").addEventListener("change", () => {
  state.toggleHighlights();
  rerender();
});
byId<HTMLSelectElement>("view").addEventListener("change", (event) => {
  after(state.setViewMode((event.target as HTMLSelectElement).value as "dag" | "moral" | "correlation"));
});
byId<HTMLSelectElement>("style").addEventListener("change", (event) => {
  state.setStyle((event.target as HTMLSelectElement).value as "classic" | "sem");
  rerender();
});
byId<HTMLSelectElement>("effect").addEventListener("change", (event) => {
  after(state.setEffect((event.target as HTMLSelectElement).value as "total" | "direct"));
});

after(state.loadCode(INITIAL));

// Editor state machine. All mutation funnels through apply(), which
// snapshots for undo, re-serializes the model code, and kicks off a
// fresh analysis round; responses carry the revision they were computed
// for and are dropped if the diagram moved on in the meantime.

import {
  AnalysisBackend,
  AdjustPayload,
  EffectKind,
  ImplicationPayload,
  InstrumentPayload,
  PathPayload,
  UndirectedPayload,
} from "./backend.js";
import { CycleError, Dag, DagError, SelfLoopError } from "./dag.js";
import { Point } from "./layout.js";
import { ModelSyntaxError, parse, serialize } from "./modelcode.js";
import { DiagramStyle, RenderOptions, renderDag, renderUndirected } from "./render.js";

export type ViewMode = "dag" | "moral" | "correlation";

export type Dialog =
  | { readonly kind: "new"; readonly at: Point }
  | { readonly kind: "rename"; readonly target: string };

export interface Panel<T> {
  readonly pending: boolean;
  readonly value: T | null;
  readonly hint: string | null;
}

const PENDING: Panel<never> = { pending: true, value: null, hint: null };

function done<T>(value: T): Panel<T> {
  return { pending: false, value, hint: null };
}

function hinted<T>(hint: string): Panel<T> {
  return { pending: false, value: null, hint };
}

interface Snapshot {
  readonly dag: Dag;
  readonly text: string;
}

export const CAUSAL_COLOR = "#2e7d32";
export const BIASING_COLOR = "#b03060";

export class EditorState {
  dag: Dag;
  modelCodeText: string;
  selection: string | null = null;
  hovered: string | null = null;
  viewMode: ViewMode = "dag";
  style: DiagramStyle = "classic";
  highlightPaths = false;
  dialog: Dialog | null = null;
  notice: string | null = null;
  effect: EffectKind = "total";
  revision = 0;

  adjustment: Panel<AdjustPayload> = PENDING;
  instruments: Panel<readonly InstrumentPayload[]> = PENDING;
  implications: Panel<readonly ImplicationPayload[]> = PENDING;
  paths: Panel<readonly PathPayload[]> = PENDING;
  undirected: Panel<UndirectedPayload> = PENDING;

  private past: Snapshot[] = [];
  private future: Snapshot[] = [];

  constructor(
    private readonly backend: AnalysisBackend,
    initialCode = "\n",
  ) {
    this.dag = parse(initialCode);
    this.modelCodeText = serialize(this.dag);
  }

  // -- text round trip ----------------------------------------------------

  loadCode(text: string): Promise<void> {
    let next: Dag;
    try {
      next = parse(text);
    } catch (err) {
      this.notice = (err as Error).message;
      return Promise.resolve();
    }
    this.notice = null;
    return this.apply(next);
  }

  // -- keyboard -------------------------------------------------------------

  handleKey(key: string): Promise<void> {
    if (this.dialog) return Promise.resolve();
    if (key === "n") {
      this.dialog = { kind: "new", at: this.nextFreeSpot() };
      return Promise.resolve();
    }
    const target = this.hovered;
    if (!target || !this.dag.has(target)) return Promise.resolve();
    switch (key) {
      case "e":
        return this.apply(this.dag.setStatus(target, "exposure"));
      case "o":
        return this.apply(this.dag.setStatus(target, "outcome"));
      case "a":
        return this.apply(this.dag.setStatus(target, "adjusted"));
      case "u":
        return this.apply(this.dag.setStatus(target, "unobserved"));
      case "r":
        this.dialog = { kind: "rename", target };
        return Promise.resolve();
      case "d":
      case "Delete":
        if (this.selection === target) this.selection = null;
        return this.apply(this.dag.removeVariable(target));
      case "c":
        return this.connect(target);
      default:
        return Promise.resolve();
    }
  }

  // First press picks the source, second press completes the edge.
  // Re-pressing on the source cancels; an existing edge toggles away,
  // a reverse edge flips, and a would-be cycle is refused with a notice.
  private connect(target: string): Promise<void> {
    if (this.selection === null) {
      this.selection = target;
      return Promise.resolve();
    }
    const source = this.selection;
    this.selection = null;
    if (source === target) return Promise.resolve();
    try {
      return this.apply(this.dag.toggleEdge(source, target));
    } catch (err) {
      if (err instanceof CycleError || err instanceof SelfLoopError) {
        this.notice = err.message;
        return Promise.resolve();
      }
      throw err;
    }
  }

  // -- pointer ----------------------------------------------------------------

  doubleClickCanvas(at: Point): void {
    if (this.viewMode !== "dag" || this.dialog) return;
    this.dialog = { kind: "new", at };
  }

  doubleClickVertex(name: string): Promise<void> {
    if (this.dialog) return Promise.resolve();
    this.hovered = name;
    return this.connect(name);
  }

  dragVertex(name: string, to: Point): Promise<void> {
    // A move never changes the independence structure, so panels stay.
    return this.apply(this.dag.setLayout(name, to), { refresh: false });
  }

  // -- dialogs -----------------------------------------------------------------

  submitDialog(value: string): Promise<void> {
    const dialog = this.dialog;
    if (!dialog) return Promise.resolve();
    const name = value.trim();
    try {
      const next =
        dialog.kind === "new"
          ? this.dag.addVariable(name, "other", dialog.at)
          : this.dag.renameVariable(dialog.target, name);
      this.dialog = null;
      this.notice = null;
      if (next === this.dag) return Promise.resolve();
      return this.apply(next);
    } catch (err) {
      if (err instanceof DagError) {
        // Leave the dialog open so the name can be corrected.
        this.notice = err.message;
        return Promise.resolve();
      }
      throw err;
    }
  }

  cancelDialog(): void {
    this.dialog = null;
  }

  // -- view toggles ---------------------------------------------------------

  setViewMode(mode: ViewMode): Promise<void> {
    this.viewMode = mode;
    this.selection = null;
    return this.refreshAnalyses();
  }

  setStyle(style: DiagramStyle): void {
    this.style = style;
  }

  setEffect(effect: EffectKind): Promise<void> {
    this.effect = effect;
    return this.refreshAnalyses();
  }

  toggleHighlights(): void {
    this.highlightPaths = !this.highlightPaths;
  }

  // -- history ------------------------------------------------------------------

  get canUndo(): boolean {
    return this.past.length > 0;
  }

  get canRedo(): boolean {
    return this.future.length > 0;
  }

  undo(): Promise<void> {
    const snapshot = this.past.pop();
    if (!snapshot) return Promise.resolve();
    this.future.push({ dag: this.dag, text: this.modelCodeText });
    return this.restore(snapshot);
  }

  redo(): Promise<void> {
    const snapshot = this.future.pop();
    if (!snapshot) return Promise.resolve();
    this.past.push({ dag: this.dag, text: this.modelCodeText });
    return this.restore(snapshot);
  }

  private restore(snapshot: Snapshot): Promise<void> {
    this.dag = snapshot.dag;
    this.modelCodeText = snapshot.text;
    this.selection = null;
    return this.refreshAnalyses();
  }

  // -- core ---------------------------------------------------------------------

  private apply(next: Dag, options: { refresh?: boolean } = {}): Promise<void> {
    this.past.push({ dag: this.dag, text: this.modelCodeText });
    this.future = [];
    this.dag = next;
    this.modelCodeText = serialize(next);
    if (options.refresh === false) {
      this.revision += 1;
      return Promise.resolve();
    }
    return this.refreshAnalyses();
  }

  refreshAnalyses(): Promise<void> {
    this.revision += 1;
    const stamp = this.revision;
    const code = this.modelCodeText;
    const fresh = (): boolean => stamp === this.revision;
    this.adjustment = PENDING;
    this.instruments = PENDING;
    this.implications = PENDING;
    this.paths = PENDING;
    const jobs: Promise<void>[] = [
      this.backend.adjust(code, this.effect).then((r) => {
        if (fresh()) this.adjustment = r.ok ? done(r.value) : hinted(r.hint);
      }),
      this.backend.instruments(code).then((r) => {
        if (fresh()) this.instruments = r.ok ? done(r.value) : hinted(r.hint);
      }),
      this.backend.implications(code).then((r) => {
        if (fresh()) this.implications = r.ok ? done(r.value) : hinted(r.hint);
      }),
      this.backend.paths(code).then((r) => {
        if (fresh()) this.paths = r.ok ? done(r.value) : hinted(r.hint);
      }),
    ];
    if (this.viewMode !== "dag") {
      this.undirected = PENDING;
      jobs.push(
        this.backend.transform(code, this.viewMode).then((r) => {
          if (fresh()) this.undirected = r.ok ? done(r.value) : hinted(r.hint);
        }),
      );
    }
    return Promise.all(jobs).then(() => undefined);
  }

  // -- derived views -------------------------------------------------------------

  // Union of the edges lying on open paths, biasing color winning over
  // causal when an edge serves both.
  edgeColors(): Map<string, string> {
    const colors = new Map<string, string>();
    if (!this.highlightPaths || !this.paths.value) return colors;
    for (const row of this.paths.value) {
      if (!row.open) continue;
      const color = row.class === "causal" ? CAUSAL_COLOR : BIASING_COLOR;
      for (let i = 0; i < row.directions.length; i++) {
        const [a, b] = [row.vertices[i], row.vertices[i + 1]];
        const key = row.directions[i] === "forward" ? a + " " + b : b + " " + a;
        if (color === BIASING_COLOR || !colors.has(key)) colors.set(key, color);
      }
    }
    return colors;
  }

  renderSvg(): string {
    if (this.viewMode === "dag") {
      const options: RenderOptions = {
        style: this.style,
        selected: this.selection,
        edgeColors: this.edgeColors(),
      };
      return renderDag(this.dag, options);
    }
    const lines = this.undirected.value?.lines ?? [];
    return renderUndirected(this.dag, lines);
  }

  private nextFreeSpot(): Point {
    let x = 0;
    const taken = new Set(this.dag.variables.map((v) => (v.layout ? v.layout[0] + "," + v.layout[1] : "")));
    while (taken.has(x + ",0")) x += 1;
    return [x, 0];
  }
}

// Panel lines as the sidebar shows them; pure so tests can cover the
// formatting without a DOM.
export function describeSets(panel: Panel<AdjustPayload>): string[] {
  if (panel.pending) return ["..."];
  if (panel.hint) return [panel.hint];
  const report = panel.value!;
  if (!report.feasible) return ["no sufficient adjustment set"];
  if (report.sets.length === 1 && report.sets[0].length === 0) return ["{} (no adjustment needed)"];
  return report.sets.map((s) => "{" + s.join(", ") + "}");
}

export function describeInstruments(panel: Panel<readonly InstrumentPayload[]>): string[] {
  if (panel.pending) return ["..."];
  if (panel.hint) return [panel.hint];
  const rows = panel.value!;
  if (!rows.length) return ["none found"];
  return rows.map((r) => (r.conditioningSet.length ? `${r.instrument} | ${r.conditioningSet.join(", ")}` : r.instrument));
}

export function describeImplications(panel: Panel<readonly ImplicationPayload[]>): string[] {
  if (panel.pending) return ["..."];
  if (panel.hint) return [panel.hint];
  const rows = panel.value!;
  if (!rows.length) return ["none"];
  return rows.map((r) => `${r.x} _||_ ${r.y}` + (r.given.length ? ` | ${r.given.join(", ")}` : ""));
}

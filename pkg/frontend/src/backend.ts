// Analysis boundary. The UI never computes adjustment sets itself; it
// sends model code to the command-line backend and renders the JSON it
// gets back. Semantic refusals (unknown roles, bad queries) come back
// as hints to show in the panel, not as thrown errors.

export type EffectKind = "total" | "direct";
export type TransformKind = "moral" | "correlation";

export interface AdjustPayload {
  readonly effect: EffectKind;
  readonly feasible: boolean;
  readonly sets: readonly (readonly string[])[];
}

export interface InstrumentPayload {
  readonly instrument: string;
  readonly conditioningSet: readonly string[];
}

export interface ImplicationPayload {
  readonly x: string;
  readonly y: string;
  readonly given: readonly string[];
}

export interface PathPayload {
  readonly vertices: readonly string[];
  readonly directions: readonly ("forward" | "backward")[];
  readonly class: "causal" | "biasing";
  readonly open: boolean;
  readonly text: string;
}

export interface UndirectedPayload {
  readonly vertices: readonly string[];
  readonly lines: readonly (readonly [string, string])[];
}

// ok=false carries a human-readable reason the analysis does not apply
// to the current diagram (for example: no exposure marked yet).
export type BackendResult<T> = { readonly ok: true; readonly value: T } | { readonly ok: false; readonly hint: string };

export class BackendError extends Error {}

export interface AnalysisBackend {
  adjust(code: string, effect: EffectKind): Promise<BackendResult<AdjustPayload>>;
  instruments(code: string): Promise<BackendResult<readonly InstrumentPayload[]>>;
  implications(code: string): Promise<BackendResult<readonly ImplicationPayload[]>>;
  paths(code: string): Promise<BackendResult<readonly PathPayload[]>>;
  transform(code: string, kind: TransformKind): Promise<BackendResult<UndirectedPayload>>;
}

async function postJson<T>(url: string, code: string): Promise<BackendResult<T>> {
  const response = await fetch(url, {
    method: "POST",
    headers: { "Content-Type": "text/plain; charset=utf-8" },
    body: code,
  });
  const body = await response.json();
  if (response.status === 422) return { ok: false, hint: String(body.error ?? "not applicable") };
  if (!response.ok) throw new BackendError(String(body.error ?? response.status));
  return { ok: true, value: body as T };
}

// Talks to the bundled node server, which forwards to the CLI.
export class HttpBackend implements AnalysisBackend {
  constructor(private readonly base: string = "") {}

  adjust(code: string, effect: EffectKind): Promise<BackendResult<AdjustPayload>> {
    return postJson(`${this.base}/api/adjust?effect=${effect}`, code);
  }

  instruments(code: string): Promise<BackendResult<readonly InstrumentPayload[]>> {
    return postJson<{ instruments: readonly InstrumentPayload[] }>(`${this.base}/api/instruments`, code).then(
      (r) => (r.ok ? { ok: true, value: r.value.instruments } : r),
    );
  }

  implications(code: string): Promise<BackendResult<readonly ImplicationPayload[]>> {
    return postJson<{ implications: readonly ImplicationPayload[] }>(`${this.base}/api/implications`, code).then(
      (r) => (r.ok ? { ok: true, value: r.value.implications } : r),
    );
  }

  paths(code: string): Promise<BackendResult<readonly PathPayload[]>> {
    return postJson<{ paths: readonly PathPayload[] }>(`${this.base}/api/paths`, code).then(
      (r) => (r.ok ? { ok: true, value: r.value.paths } : r),
    );
  }

  transform(code: string, kind: TransformKind): Promise<BackendResult<UndirectedPayload>> {
    return postJson(`${this.base}/api/transform?kind=${kind}`, code);
  }
}

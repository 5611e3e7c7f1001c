// Node-only backend: spawns the Python CLI per request, feeding model
// code on stdin. Kept out of backend.ts so browser bundles never pull
// in child_process.

import { spawn } from "node:child_process";

import {
  AdjustPayload,
  AnalysisBackend,
  BackendError,
  BackendResult,
  EffectKind,
  ImplicationPayload,
  InstrumentPayload,
  PathPayload,
  TransformKind,
  UndirectedPayload,
} from "./backend.js";

export interface CliRun {
  readonly status: number;
  readonly stdout: string;
  readonly stderr: string;
}

export function runCli(argv: readonly string[], stdin: string, python = "python3"): Promise<CliRun> {
  return new Promise((resolve, reject) => {
    const child = spawn(python, ["-m", "dagscope", ...argv], { stdio: ["pipe", "pipe", "pipe"] });
    let stdout = "";
    let stderr = "";
    child.stdout.on("data", (chunk) => (stdout += chunk));
    child.stderr.on("data", (chunk) => (stderr += chunk));
    child.on("error", reject);
    child.on("close", (status) => resolve({ status: status ?? 1, stdout, stderr }));
    child.stdin.end(stdin);
  });
}

function stripPrefix(stderr: string): string {
  const text = stderr.trim();
  return text.startsWith("error: ") ? text.slice("error: ".length) : text;
}

export class CliBackend implements AnalysisBackend {
  constructor(private readonly python: string = "python3") {}

  // Exit 4 marks a query the diagram cannot answer (hint); exit 3 a
  // broken document; anything else unexpected.
  private async run<T>(argv: readonly string[], code: string): Promise<BackendResult<T>> {
    const run = await runCli([...argv, "--json", "-"], code, this.python);
    if (run.status === 0 || run.status === 1) return { ok: true, value: JSON.parse(run.stdout) as T };
    if (run.status === 4) return { ok: false, hint: stripPrefix(run.stderr) };
    throw new BackendError(stripPrefix(run.stderr) || `exit ${run.status}`);
  }

  adjust(code: string, effect: EffectKind): Promise<BackendResult<AdjustPayload>> {
    return this.run(["adjust", "--effect", effect], code);
  }

  async instruments(code: string): Promise<BackendResult<readonly InstrumentPayload[]>> {
    const r = await this.run<{ instruments: readonly InstrumentPayload[] }>(["instruments"], code);
    return r.ok ? { ok: true, value: r.value.instruments } : r;
  }

  async implications(code: string): Promise<BackendResult<readonly ImplicationPayload[]>> {
    const r = await this.run<{ implications: readonly ImplicationPayload[] }>(["implications"], code);
    return r.ok ? { ok: true, value: r.value.implications } : r;
  }

  async paths(code: string): Promise<BackendResult<readonly PathPayload[]>> {
    const r = await this.run<{ paths: readonly PathPayload[] }>(["paths"], code);
    return r.ok ? { ok: true, value: r.value.paths } : r;
  }

  transform(code: string, kind: TransformKind): Promise<BackendResult<UndirectedPayload>> {
    return this.run(["transform", "--kind", kind], code);
  }
}

// Tiny development server: serves the static shell and forwards
// /api/<command> requests to the Python CLI. No framework; the whole
// surface is five POST routes and two static paths.

import { readFile } from "node:fs/promises";
import { createServer, IncomingMessage, ServerResponse } from "node:http";
import { dirname, join, normalize } from "node:path";
import { fileURLToPath, pathToFileURL } from "node:url";

import { runCli } from "./backend_node.js";

const ROOT = join(dirname(fileURLToPath(import.meta.url)), "..");

const ROUTES: Record<string, (q: URLSearchParams) => string[] | null> = {
  adjust: (q) => {
    const effect = q.get("effect") ?? "total";
    return effect === "total" || effect === "direct" ? ["adjust", "--effect", effect] : null;
  },
  instruments: () => ["instruments"],
  implications: () => ["implications"],
  paths: () => ["paths"],
  transform: (q) => {
    const kind = q.get("kind");
    return kind === "moral" || kind === "correlation" ? ["transform", "--kind", kind] : null;
  },
};

function sendJson(res: ServerResponse, status: number, body: string): void {
  res.writeHead(status, { "Content-Type": "application/json; charset=utf-8" });
  res.end(body);
}

function readBody(req: IncomingMessage): Promise<string> {
  return new Promise((resolve, reject) => {
    let body = "";
    req.on("data", (chunk) => (body += chunk));
    req.on("end", () => resolve(body));
    req.on("error", reject);
  });
}

async function handleApi(req: IncomingMessage, res: ServerResponse, url: URL): Promise<void> {
  const route = ROUTES[url.pathname.slice("/api/".length)];
  const argv = route?.(url.searchParams) ?? null;
  if (!argv || req.method !== "POST") {
    sendJson(res, 404, JSON.stringify({ error: "unknown analysis" }));
    return;
  }
  const code = await readBody(req);
  const run = await runCli([...argv, "--json", "-"], code);
  if (run.status === 0 || run.status === 1) {
    sendJson(res, 200, run.stdout);
  } else {
    const message = run.stderr.trim().replace(/^error: /, "");
    sendJson(res, run.status === 4 ? 422 : 400, JSON.stringify({ error: message }));
  }
}

async function handleStatic(res: ServerResponse, pathname: string): Promise<void> {
  const relative = pathname === "/" ? "index.html" : pathname.slice(1);
  const safe = normalize(relative);
  if (safe.startsWith("..") || !(safe === "index.html" || safe.startsWith("dist/"))) {
    res.writeHead(404).end("not found");
    return;
  }
  try {
    const data = await readFile(join(ROOT, safe));
    const type = safe.endsWith(".html")
      ? "text/html; charset=utf-8"
      : safe.endsWith(".js")
        ? "text/javascript; charset=utf-8"
        : "application/octet-stream";
    res.writeHead(200, { "Content-Type": type }).end(data);
  } catch {
    res.writeHead(404).end("not found");
  }
}

export function makeServer() {
  return createServer((req, res) => {
    const url = new URL(req.url ?? "/", "http://localhost");
    const job = url.pathname.startsWith("/api/") ? handleApi(req, res, url) : handleStatic(res, url.pathname);
    job.catch((err) => {
      sendJson(res, 500, JSON.stringify({ error: String(err) }));
    });
  });
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  const port = Number(process.env.PORT ?? 8000);
  makeServer().listen(port, () => {
    console.log(`ui on http://localhost:${port}`);
  });
}

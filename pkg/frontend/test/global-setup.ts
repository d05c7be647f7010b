/** Boots the real Python game service for the live UI tests. */

import { spawn, ChildProcess } from "node:child_process";

export const API_BASE = "http://127.0.0.1:8787";
export const BUDGET = 5;

let server: ChildProcess | undefined;

async function waitForService(timeoutMs = 45000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${API_BASE}/sessions/warmup-probe`);
      if (res.status === 404) return; // service is answering
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 300));
  }
  throw new Error(`game service did not come up on ${API_BASE}`);
}

export async function setup(): Promise<void> {
  server = spawn(
    "python3",
    ["-m", "searchlab.cli", "serve", "--host", "127.0.0.1", "--port", "8787", "--budget", String(BUDGET)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  server.stderr?.on("data", () => {
    /* uvicorn logs; keep test output clean */
  });
  server.on("exit", (code) => {
    if (code !== null && code !== 0) console.error(`game service exited with ${code}`);
  });
  await waitForService();
}

export async function teardown(): Promise<void> {
  if (server && !server.killed) {
    server.kill("SIGTERM");
    await new Promise((r) => setTimeout(r, 300));
    if (server.exitCode === null) server.kill("SIGKILL");
  }
}

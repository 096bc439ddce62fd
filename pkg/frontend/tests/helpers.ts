// Shared test plumbing: canned service payloads captured from the real
// backend, and a fetch stub that records every request it answers.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { vi } from "vitest";

// node's URL parsing, not happy-dom's document-relative one
const HERE = dirname(fileURLToPath(import.meta.url));

export function fixture(name: string): any {
  return JSON.parse(readFileSync(join(HERE, "fixtures", `${name}.json`), "utf8"));
}

export interface RecordedRequest {
  url: string;
  method: string;
  body: any;
}

export interface FetchStub {
  requests: RecordedRequest[];
  /** bodies served back, in order: the ground truth for traceability */
  responses: any[];
  /** queue a one-off response for the next request to this path */
  enqueue(path: string, status: number, body: any): void;
  /** fail the next request to this path with a network error */
  failNext(path: string): void;
  install(): void;
}

// plain object instead of a real Response: resolves on microtasks only,
// so fake-timer tests can never deadlock on stream plumbing
export function jsonResponse(status: number, body: any): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    json: async () => body,
  } as unknown as Response;
}

/**
 * Fake service wired to the captured fixtures. Routes default to the
 * canned payloads; enqueue()/failNext() override the next match. All
 * traffic is recorded so tests can prove which numbers came from where.
 */
export function makeFetchStub(): FetchStub {
  const queues = new Map<string, Array<() => Response>>();
  const stub: FetchStub = {
    requests: [],
    responses: [],
    enqueue(path, status, body) {
      const queue = queues.get(path) ?? [];
      queue.push(() => {
        stub.responses.push(body);
        return jsonResponse(status, body);
      });
      queues.set(path, queue);
    },
    failNext(path) {
      const queue = queues.get(path) ?? [];
      queue.push(() => {
        throw new TypeError("fetch failed");
      });
      queues.set(path, queue);
    },
    install() {
      vi.stubGlobal("fetch", async (input: any, init?: any): Promise<Response> => {
        const url = String(input);
        const path = url.replace(/^https?:\/\/[^/]+/, "");
        const body = init?.body ? JSON.parse(init.body) : null;
        stub.requests.push({ url, method: init?.method ?? "GET", body });
        const serve = (status: number, payload: any) => {
          stub.responses.push(payload);
          return jsonResponse(status, payload);
        };
        const queued = queues.get(path)?.shift();
        if (queued) return queued();
        if (path === "/api/v1/defaults") return serve(200, fixture("defaults"));
        if (path === "/api/v1/refocus") {
          return serve(200, fixture(body.a_list[0] === 0.5 ? "refocus_a05" : "refocus_a1"));
        }
        if (path === "/api/v1/triangulate") {
          return serve(200, fixture(body.G === 2 ? "triangulate_g2" : "triangulate_g1"));
        }
        return serve(404, { ok: false, error: { name: "NotFound", message: path } });
      });
    },
  };
  return stub;
}

/** Every numeric leaf of a JSON payload, for traceability checks. */
export function numericLeaves(value: any, found: Set<number> = new Set()): Set<number> {
  if (typeof value === "number") found.add(value);
  else if (Array.isArray(value)) value.forEach((item) => numericLeaves(item, found));
  else if (value && typeof value === "object") {
    Object.values(value).forEach((item) => numericLeaves(item, found));
  }
  return found;
}

/** Every string leaf of a JSON payload (ids, labels, error names). */
export function stringLeaves(value: any, found: Set<string> = new Set()): Set<string> {
  if (typeof value === "string") found.add(value);
  else if (Array.isArray(value)) value.forEach((item) => stringLeaves(item, found));
  else if (value && typeof value === "object") {
    Object.values(value).forEach((item) => stringLeaves(item, found));
  }
  return found;
}

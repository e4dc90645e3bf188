import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", `${name}.json`), "utf-8")) as T;
}

export interface RecordedCall {
  url: string;
  method: string;
  body?: unknown;
}

// Fake fetch serving canned JSON bodies by URL prefix match, recording calls.
export function fakeFetch(
  routes: Record<string, unknown | ((url: string) => unknown)>,
  calls: RecordedCall[] = [],
): { fetchFn: FetchLike; calls: RecordedCall[] } {
  const fetchFn: FetchLike = async (url, init) => {
    calls.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    for (const [prefix, value] of Object.entries(routes)) {
      if (url.startsWith(prefix)) {
        const data = typeof value === "function" ? (value as (u: string) => unknown)(url) : value;
        const status = (data as { __status?: number }).__status ?? 200;
        return new Response(JSON.stringify(data), { status });
      }
    }
    return new Response(JSON.stringify({ code: "not_found", message: `no route ${url}` }), {
      status: 404,
    });
  };
  return { fetchFn, calls };
}

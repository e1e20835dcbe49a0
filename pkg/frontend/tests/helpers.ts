// Shared test scaffolding: a fetch stub that replays recorded fixture
// backend responses (tests/fixtures/recordings.json, regenerated by
// scripts/record_fixtures.py against the real service), and an app
// mounter that cleans up after each test.

import { afterEach, vi } from "vitest";

import { mountApp, type App } from "../src/app.js";
import recordingsJson from "./fixtures/recordings.json";

interface Recording {
  path: string;
  params: Record<string, string>;
  status: number;
  body: unknown;
}

const recordings = recordingsJson as Recording[];

const mounted: App[] = [];

afterEach(() => {
  while (mounted.length) mounted.pop()!.dispose();
  vi.unstubAllGlobals();
  window.location.hash = "";
  document.body.innerHTML = "";
});

/** Replace global fetch with a replay of the recorded responses. */
export function installFixtureFetch(): { calls: string[] } {
  const calls: string[] = [];
  vi.stubGlobal("fetch", async (input: unknown) => {
    const url = new URL(String(input), "http://fixture.test");
    calls.push(url.pathname + url.search);
    const q = url.searchParams.get("q");
    const rec = recordings.find(
      (r) => r.path === url.pathname && (r.params.q ?? null) === q,
    );
    const body = rec ? rec.body : { error: `no recording for ${url.pathname}` };
    return new Response(JSON.stringify(body), {
      status: rec ? rec.status : 599,
      headers: { "content-type": "application/json" },
    });
  });
  return { calls };
}

export function mountTestApp(hash: string): { root: HTMLElement; app: App } {
  window.location.hash = hash;
  document.body.innerHTML = '<div id="app"></div>';
  const root = document.getElementById("app")!;
  const app = mountApp(root);
  mounted.push(app);
  return { root, app };
}

/** Pin an image's natural and displayed size; happy-dom loads nothing. */
export function sizeImage(
  img: HTMLImageElement,
  natural: [number, number],
  displayed: [number, number],
): void {
  Object.defineProperty(img, "naturalWidth", { value: natural[0] });
  Object.defineProperty(img, "naturalHeight", { value: natural[1] });
  Object.defineProperty(img, "clientWidth", { value: displayed[0] });
  Object.defineProperty(img, "clientHeight", { value: displayed[1] });
}

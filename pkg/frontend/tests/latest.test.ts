import { describe, expect, it } from "vitest";

import { LatestWins } from "../src/latest.js";

function deferred<T>() {
  let resolve!: (value: T) => void;
  let reject!: (reason: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

describe("LatestWins", () => {
  it("discards an older response that settles after a newer one", async () => {
    const gate = new LatestWins();
    const slow = deferred<string>();
    const fast = deferred<string>();
    const first = gate.run(() => slow.promise);
    const second = gate.run(() => fast.promise);
    fast.resolve("new");
    slow.resolve("old"); // arrives late, must be dropped
    expect(await second).toBe("new");
    expect(await first).toBeNull();
  });

  it("swallows stale failures", async () => {
    const gate = new LatestWins();
    const slow = deferred<string>();
    const fast = deferred<string>();
    const first = gate.run(() => slow.promise);
    const second = gate.run(() => fast.promise);
    fast.resolve("new");
    slow.reject(new Error("boom"));
    expect(await second).toBe("new");
    await expect(first).resolves.toBeNull();
  });

  it("reports failures of the current request", async () => {
    const gate = new LatestWins();
    await expect(gate.run(() => Promise.reject(new Error("down"))))
      .rejects.toThrow("down");
  });

  it("passes through a lone request", async () => {
    const gate = new LatestWins();
    expect(await gate.run(() => Promise.resolve(42))).toBe(42);
  });
});

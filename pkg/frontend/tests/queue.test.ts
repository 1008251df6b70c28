import { describe, expect, it } from "vitest";

import { LatestWinsQueue, SupersededError, debounce } from "../src/queue.js";

function deferred<T>() {
  let resolve!: (v: T) => void;
  const promise = new Promise<T>((r) => (resolve = r));
  return { promise, resolve };
}

describe("LatestWinsQueue", () => {
  it("runs jobs one at a time", async () => {
    const queue = new LatestWinsQueue<string>();
    const gate = deferred<string>();
    const first = queue.submit(() => gate.promise);
    let secondStarted = false;
    const second = queue.submit(async () => {
      secondStarted = true;
      return "second";
    });
    expect(secondStarted).toBe(false);
    gate.resolve("first");
    expect(await first).toBe("first");
    expect(await second).toBe("second");
  });

  it("drops intermediate gestures, keeping the latest", async () => {
    const queue = new LatestWinsQueue<number>();
    const gate = deferred<number>();
    const ran: number[] = [];
    const p1 = queue.submit(async () => {
      ran.push(1);
      return gate.promise;
    });
    const p2 = queue.submit(async () => {
      ran.push(2);
      return 2;
    });
    const p3 = queue.submit(async () => {
      ran.push(3);
      return 3;
    });
    await expect(p2).rejects.toThrowError(SupersededError);
    gate.resolve(1);
    expect(await p1).toBe(1);
    expect(await p3).toBe(3);
    expect(ran).toEqual([1, 3]);
  });

  it("keeps draining after a failed job", async () => {
    const queue = new LatestWinsQueue<string>();
    const failing = queue.submit(async () => {
      throw new Error("boom");
    });
    await expect(failing).rejects.toThrow("boom");
    expect(await queue.submit(async () => "ok")).toBe("ok");
  });
});

describe("debounce", () => {
  it("fires once with the last arguments", async () => {
    const seen: number[] = [];
    const fn = debounce((v: number) => seen.push(v), 10);
    fn(1);
    fn(2);
    fn(3);
    await new Promise((r) => setTimeout(r, 40));
    expect(seen).toEqual([3]);
  });
});

import { describe, expect, it } from "vitest";

import { computeLayout, seededRandom } from "../src/layout.js";

const NODES = ["a", "b", "c", "d", "e"];
const EDGES: Array<readonly [string, string]> = [
  ["a", "b"],
  ["b", "c"],
  ["c", "a"],
  ["d", "e"],
];

describe("deterministic layout", () => {
  it("same seed, same picture", () => {
    const first = computeLayout(NODES, EDGES, { seed: 42 });
    const second = computeLayout(NODES, EDGES, { seed: 42 });
    expect([...first.entries()]).toEqual([...second.entries()]);
  });

  it("input order does not matter", () => {
    const first = computeLayout(NODES, EDGES, { seed: 9 });
    const second = computeLayout([...NODES].reverse(), EDGES, { seed: 9 });
    expect([...first.entries()].sort()).toEqual([...second.entries()].sort());
  });

  it("different seeds move things", () => {
    const first = computeLayout(NODES, EDGES, { seed: 1 });
    const second = computeLayout(NODES, EDGES, { seed: 2 });
    expect(JSON.stringify([...first.entries()])).not.toBe(
      JSON.stringify([...second.entries()]),
    );
  });

  it("stays on the canvas", () => {
    const positions = computeLayout(NODES, EDGES, { width: 200, height: 100, seed: 3 });
    for (const { x, y } of positions.values()) {
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThanOrEqual(200);
      expect(y).toBeGreaterThanOrEqual(0);
      expect(y).toBeLessThanOrEqual(100);
    }
  });

  it("prng is stable across calls", () => {
    const a = seededRandom(123);
    const b = seededRandom(123);
    for (let i = 0; i < 10; i++) expect(a()).toBe(b());
  });
});

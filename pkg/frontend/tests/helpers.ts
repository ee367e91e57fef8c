import type { FetchLike, GraphView } from "../src/types.js";

export const FIXTURE_GRAPH: GraphView = {
  nodes: [
    { id: "Shakespeare", types: ["Person"], literals: [{ predicate: "DateOfBirth", value: "1564-04-26", datatype: "date" }] },
    { id: "Hamlet", types: ["Play"], literals: [] },
    { id: "Marlowe", types: ["Person"], literals: [] },
    { id: "JohnDoe", types: ["Person"], literals: [] },
    { id: "MaryMajor", types: ["Person"], literals: [] },
    { id: "Leipzig", types: ["City"], literals: [] },
    { id: "Elsinore", types: ["Place"], literals: [] },
  ],
  edges: [
    { source: "Shakespeare", predicate: "isAuthorOf", target: "Hamlet", inferred: false },
    { source: "Hamlet", predicate: "SetIn", target: "Elsinore", inferred: false },
    { source: "Marlowe", predicate: "GotToKnowBy", target: "Shakespeare", inferred: false },
    { source: "Marlowe", predicate: "KnowsOf", target: "Shakespeare", inferred: true },
    { source: "JohnDoe", predicate: "KnowsOf", target: "MaryMajor", inferred: false },
    { source: "JohnDoe", predicate: "LivesIn", target: "Leipzig", inferred: false },
    { source: "MaryMajor", predicate: "LivesIn", target: "Leipzig", inferred: false },
  ],
};

export function jsonFetch(payload: unknown, status = 200): FetchLike {
  return async () =>
    new Response(JSON.stringify(payload), {
      status,
      headers: { "content-type": "application/json" },
    });
}

export function failingFetch(): FetchLike {
  return async () => {
    throw new TypeError("network down");
  };
}

export async function waitFor(
  condition: () => boolean,
  timeoutMs = 10000,
  stepMs = 25,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (condition()) return;
    await new Promise((resolve) => setTimeout(resolve, stepMs));
  }
  throw new Error("condition never became true");
}

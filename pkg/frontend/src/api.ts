import type { ClauseJson, FetchLike, GraphView, QueryResult, TripleJson } from "./types.js";

export function pageHref(name: string): string {
  return "/wiki/" + encodeURIComponent(name);
}

export function editHref(name: string): string {
  return pageHref(name) + "/edit";
}

function resolveFetch(fetchFn?: FetchLike): FetchLike {
  return fetchFn ?? ((input, init) => globalThis.fetch(input, init));
}

export async function fetchGraph(base = "", fetchFn?: FetchLike): Promise<GraphView> {
  const response = await resolveFetch(fetchFn)(`${base}/api/graph`);
  if (!response.ok) throw new Error(`graph request failed: ${response.status}`);
  return (await response.json()) as GraphView;
}

export async function fetchTriples(
  base = "",
  fetchFn?: FetchLike,
): Promise<TripleJson[]> {
  const response = await resolveFetch(fetchFn)(`${base}/api/triples`);
  if (!response.ok) throw new Error(`triples request failed: ${response.status}`);
  return (await response.json()) as TripleJson[];
}

export async function runQuery(
  clauses: ClauseJson[],
  base = "",
  fetchFn?: FetchLike,
): Promise<QueryResult> {
  const response = await resolveFetch(fetchFn)(`${base}/api/query`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ clauses }),
  });
  return (await response.json()) as QueryResult;
}

/** POST the edit form the same way the browser would. */
export async function savePage(
  name: string,
  source: string,
  base = "",
  fetchFn?: FetchLike,
): Promise<Response> {
  return resolveFetch(fetchFn)(`${base}${pageHref(name)}`, {
    method: "POST",
    headers: { "content-type": "application/x-www-form-urlencoded" },
    body: "source=" + encodeURIComponent(source),
    redirect: "follow",
  });
}

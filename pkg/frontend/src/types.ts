// Shapes of the server's JSON surface plus the client-only view state.

export interface GraphNode {
  id: string;
  types: string[];
  literals: Array<{ predicate: string; value: string; datatype: string }>;
}

export interface GraphEdge {
  source: string;
  predicate: string;
  target: string;
  inferred: boolean;
}

export interface GraphView {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

/** Per-predicate appearance; one entry per predicate present in the view. */
export interface EdgeStyle {
  predicate: string;
  visible: boolean;
  width: number;
  colour: string;
}

export interface FocusState {
  focused: string | null;
  neighborhoodDepth: 1 | 2;
}

export interface TripleJson {
  subject: string;
  predicate: string;
  object:
    | { type: "ref"; name: string }
    | { type: "literal"; lexical: string; datatype: string };
}

export interface ClauseJson {
  predicate: string;
  op: string;
  value: unknown;
}

export type QueryResult =
  | { matches: string[] }
  | { error: string; reason: string };

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

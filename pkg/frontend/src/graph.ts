// Interactive graph explorer: force-directed picture of the wiki's
// reference triples with per-predicate visibility/width/colour controls,
// dashed inferred edges, and focus-in-context re-layout.

import { fetchGraph, pageHref } from "./api.js";
import { computeLayout, type Point } from "./layout.js";
import type { EdgeStyle, FetchLike, FocusState, GraphEdge, GraphView } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const PALETTE = ["#3a5a78", "#a04040", "#3f7a3f", "#8a6d1f", "#6b4fa0", "#20777a"];

export interface GraphExplorerOptions {
  base?: string;
  fetchFn?: FetchLike;
  navigate?: (url: string) => void;
  width?: number;
  height?: number;
  seed?: number;
}

export class GraphExplorer {
  readonly container: HTMLElement;
  graph: GraphView | null = null;
  edgeStyles = new Map<string, EdgeStyle>();
  focus: FocusState = { focused: null, neighborhoodDepth: 1 };
  loadCount = 0;

  private readonly base: string;
  private readonly fetchFn?: FetchLike;
  private readonly navigate: (url: string) => void;
  private readonly width: number;
  private readonly height: number;
  private readonly seed: number;

  constructor(container: HTMLElement, options: GraphExplorerOptions = {}) {
    this.container = container;
    this.base = options.base ?? "";
    this.fetchFn = options.fetchFn;
    this.navigate = options.navigate ?? ((url) => {
      window.location.href = url;
    });
    this.width = options.width ?? 640;
    this.height = options.height ?? 420;
    this.seed = options.seed ?? 7;
  }

  async load(): Promise<void> {
    const doc = this.container.ownerDocument;
    try {
      this.graph = await fetchGraph(this.base, this.fetchFn);
      this.loadCount += 1;
    } catch {
      this.container.replaceChildren();
      const offline = doc.createElement("div");
      offline.className = "graph-offline";
      offline.textContent = "The wiki is not reachable. ";
      const retry = doc.createElement("button");
      retry.className = "retry";
      retry.textContent = "Retry";
      retry.addEventListener("click", () => void this.load());
      offline.appendChild(retry);
      this.container.appendChild(offline);
      return;
    }
    this.syncStyles();
    this.render();
  }

  /** One EdgeStyle per predicate present in the view; keeps prior tweaks. */
  private syncStyles(): void {
    const predicates = [...new Set((this.graph?.edges ?? []).map((e) => e.predicate))].sort();
    const next = new Map<string, EdgeStyle>();
    predicates.forEach((predicate, index) => {
      next.set(
        predicate,
        this.edgeStyles.get(predicate) ?? {
          predicate,
          visible: true,
          width: 1.5,
          colour: PALETTE[index % PALETTE.length]!,
        },
      );
    });
    this.edgeStyles = next;
  }

  setEdgeStyle(predicate: string, patch: Partial<Omit<EdgeStyle, "predicate">>): void {
    const current = this.edgeStyles.get(predicate);
    if (!current) return;
    this.edgeStyles.set(predicate, { ...current, ...patch });
    this.render();
  }

  setFocus(focused: string | null, neighborhoodDepth: 1 | 2 = this.focus.neighborhoodDepth): void {
    this.focus = { focused, neighborhoodDepth };
    this.render(); // re-layout from data already loaded, no fetch
  }

  /** Node ids within the focus neighborhood (undirected), or all nodes. */
  visibleNodeIds(): Set<string> {
    const all = new Set((this.graph?.nodes ?? []).map((n) => n.id));
    const { focused, neighborhoodDepth } = this.focus;
    if (!focused || !all.has(focused)) return all;
    const adjacency = new Map<string, Set<string>>();
    for (const edge of this.graph?.edges ?? []) {
      (adjacency.get(edge.source) ?? adjacency.set(edge.source, new Set()).get(edge.source)!).add(edge.target);
      (adjacency.get(edge.target) ?? adjacency.set(edge.target, new Set()).get(edge.target)!).add(edge.source);
    }
    const within = new Set([focused]);
    let frontier = [focused];
    for (let depth = 0; depth < neighborhoodDepth; depth++) {
      const next: string[] = [];
      for (const node of frontier) {
        for (const neighbour of adjacency.get(node) ?? []) {
          if (!within.has(neighbour)) {
            within.add(neighbour);
            next.push(neighbour);
          }
        }
      }
      frontier = next;
    }
    return within;
  }

  visibleEdges(): GraphEdge[] {
    const nodes = this.visibleNodeIds();
    return (this.graph?.edges ?? []).filter(
      (edge) =>
        (this.edgeStyles.get(edge.predicate)?.visible ?? true) &&
        nodes.has(edge.source) &&
        nodes.has(edge.target),
    );
  }

  render(): void {
    const doc = this.container.ownerDocument;
    this.container.replaceChildren();
    if (!this.graph) return;
    if (this.graph.nodes.length === 0) {
      const empty = doc.createElement("div");
      empty.className = "graph-empty";
      empty.textContent = "Nothing to draw yet: the wiki has no pages.";
      this.container.appendChild(empty);
      return;
    }

    this.container.appendChild(this.renderControls(doc));

    const nodeIds = [...this.visibleNodeIds()];
    const edges = this.visibleEdges();
    const positions = computeLayout(
      nodeIds,
      edges.map((e) => [e.source, e.target] as const),
      { width: this.width, height: this.height, seed: this.seed },
    );

    const svg = doc.createElementNS(SVG_NS, "svg");
    svg.setAttribute("class", "graph-canvas");
    svg.setAttribute("viewBox", `0 0 ${this.width} ${this.height}`);
    svg.setAttribute("width", String(this.width));
    svg.setAttribute("height", String(this.height));

    for (const edge of edges) {
      const style = this.edgeStyles.get(edge.predicate)!;
      const from = positions.get(edge.source)!;
      const to = positions.get(edge.target)!;
      const line = doc.createElementNS(SVG_NS, "line");
      line.setAttribute("class", "edge");
      line.setAttribute("data-predicate", edge.predicate);
      line.setAttribute("data-inferred", String(edge.inferred));
      line.setAttribute("x1", from.x.toFixed(1));
      line.setAttribute("y1", from.y.toFixed(1));
      line.setAttribute("x2", to.x.toFixed(1));
      line.setAttribute("y2", to.y.toFixed(1));
      line.setAttribute("stroke", style.colour);
      line.setAttribute("stroke-width", String(style.width));
      if (edge.inferred) line.setAttribute("stroke-dasharray", "5 4");
      const title = doc.createElementNS(SVG_NS, "title");
      title.textContent = `${edge.source} ${edge.predicate} ${edge.target}`;
      line.appendChild(title);
      svg.appendChild(line);
    }

    for (const id of nodeIds.sort()) {
      const at = positions.get(id)!;
      svg.appendChild(this.renderNode(doc, id, at));
    }
    this.container.appendChild(svg);
  }

  private renderNode(doc: Document, id: string, at: Point): SVGElement {
    const group = doc.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "node");
    group.setAttribute("data-id", id);
    const circle = doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", at.x.toFixed(1));
    circle.setAttribute("cy", at.y.toFixed(1));
    circle.setAttribute("r", id === this.focus.focused ? "9" : "6");
    circle.setAttribute("fill", id === this.focus.focused ? "#d08020" : "#3a5a78");
    const label = doc.createElementNS(SVG_NS, "text");
    label.setAttribute("x", (at.x + 9).toFixed(1));
    label.setAttribute("y", (at.y + 4).toFixed(1));
    label.textContent = id;
    // click goes to the page; alt-click re-centres the picture instead
    group.addEventListener("click", (event) => {
      if ((event as MouseEvent).altKey) {
        this.setFocus(id);
      } else {
        this.navigate(pageHref(id));
      }
    });
    group.appendChild(circle);
    group.appendChild(label);
    return group;
  }

  private renderControls(doc: Document): HTMLElement {
    const controls = doc.createElement("div");
    controls.className = "graph-controls";
    for (const style of this.edgeStyles.values()) {
      const row = doc.createElement("label");
      row.className = "edge-style";
      row.setAttribute("data-predicate", style.predicate);

      const visible = doc.createElement("input");
      visible.type = "checkbox";
      visible.className = "edge-visible";
      visible.checked = style.visible;
      visible.addEventListener("change", () =>
        this.setEdgeStyle(style.predicate, { visible: visible.checked }),
      );

      const width = doc.createElement("input");
      width.type = "number";
      width.className = "edge-width";
      width.min = "0.5";
      width.step = "0.5";
      width.value = String(style.width);
      width.addEventListener("change", () =>
        this.setEdgeStyle(style.predicate, { width: Number(width.value) || 1 }),
      );

      const colour = doc.createElement("input");
      colour.type = "color";
      colour.className = "edge-colour";
      colour.value = style.colour;
      colour.addEventListener("change", () =>
        this.setEdgeStyle(style.predicate, { colour: colour.value }),
      );

      const name = doc.createElement("span");
      name.textContent = style.predicate;

      row.append(visible, name, width, colour);
      controls.appendChild(row);
    }
    const depth = doc.createElement("button");
    depth.className = "focus-depth";
    depth.textContent = `neighborhood: ${this.focus.neighborhoodDepth}`;
    depth.addEventListener("click", () =>
      this.setFocus(this.focus.focused, this.focus.neighborhoodDepth === 1 ? 2 : 1),
    );
    const clear = doc.createElement("button");
    clear.className = "focus-clear";
    clear.textContent = "show all";
    clear.addEventListener("click", () => this.setFocus(null));
    controls.append(depth, clear);
    return controls;
  }
}

// Entry point served as /static/app.js. A progressive layer: everything it
// adds also exists as a plain HTML flow, so nothing here is load-bearing.

import { enhanceEditor } from "./editor.js";
import { GraphExplorer } from "./graph.js";
import { QueryPanel } from "./query.js";

function mountPanels(doc: Document): void {
  const main = doc.querySelector<HTMLElement>("main.page");
  if (!main || !main.dataset["page"]) return;

  const graphDetails = doc.createElement("details");
  graphDetails.className = "graph-panel";
  const graphSummary = doc.createElement("summary");
  graphSummary.textContent = "Graph explorer";
  const graphMount = doc.createElement("div");
  graphDetails.append(graphSummary, graphMount);
  const explorer = new GraphExplorer(graphMount);
  graphDetails.addEventListener("toggle", () => {
    if (graphDetails.open && !explorer.graph) void explorer.load();
  });

  const queryDetails = doc.createElement("details");
  queryDetails.className = "query-panel-details";
  const querySummary = doc.createElement("summary");
  querySummary.textContent = "Ask the wiki";
  const queryMount = doc.createElement("div");
  queryDetails.append(querySummary, queryMount);
  new QueryPanel(queryMount);

  main.append(graphDetails, queryDetails);
}

enhanceEditor(document);
mountPanels(document);

// Interactive what-if queries: clause rows posted to /api/query, results
// rendered as page links, server-side rejections shown verbatim.

import { pageHref, runQuery } from "./api.js";
import type { ClauseJson, FetchLike } from "./types.js";

const OPERATORS = ["=", "!=", "<", ">", "same-year"];

export class QueryPanel {
  readonly container: HTMLElement;
  private readonly base: string;
  private readonly fetchFn?: FetchLike;
  private rows!: HTMLElement;
  private results!: HTMLElement;

  constructor(container: HTMLElement, options: { base?: string; fetchFn?: FetchLike } = {}) {
    this.container = container;
    this.base = options.base ?? "";
    this.fetchFn = options.fetchFn;
    this.render();
  }

  private render(): void {
    const doc = this.container.ownerDocument;
    this.container.replaceChildren();
    this.container.classList.add("query-panel");
    this.rows = doc.createElement("div");
    this.rows.className = "query-rows";
    this.results = doc.createElement("div");
    this.results.className = "query-results";
    const add = doc.createElement("button");
    add.className = "query-add";
    add.textContent = "+ clause";
    add.addEventListener("click", () => this.addRow());
    const run = doc.createElement("button");
    run.className = "query-run";
    run.textContent = "Ask";
    run.addEventListener("click", () => void this.run());
    this.container.append(this.rows, add, run, this.results);
    this.addRow();
  }

  addRow(predicate = "", op = "=", value = ""): void {
    const doc = this.container.ownerDocument;
    const row = doc.createElement("div");
    row.className = "query-clause";
    const predicateInput = doc.createElement("input");
    predicateInput.className = "clause-predicate";
    predicateInput.placeholder = "Predicate";
    predicateInput.value = predicate;
    const opSelect = doc.createElement("select");
    opSelect.className = "clause-op";
    for (const name of OPERATORS) {
      const option = doc.createElement("option");
      option.value = name;
      option.textContent = name;
      opSelect.appendChild(option);
    }
    opSelect.value = op;
    const valueInput = doc.createElement("input");
    valueInput.className = "clause-value";
    valueInput.placeholder = "[[Page]], 1999-12-31, @Page.Predicate, ?";
    valueInput.value = value;
    row.append(predicateInput, opSelect, valueInput);
    this.rows.appendChild(row);
  }

  clauses(): ClauseJson[] {
    return [...this.rows.querySelectorAll<HTMLElement>(".query-clause")].map((row) => {
      const value = row.querySelector<HTMLInputElement>(".clause-value")!.value.trim();
      return {
        predicate: row.querySelector<HTMLInputElement>(".clause-predicate")!.value.trim(),
        op: row.querySelector<HTMLSelectElement>(".clause-op")!.value,
        value: value === "" ? null : value,
      };
    });
  }

  async run(): Promise<void> {
    const doc = this.container.ownerDocument;
    this.results.replaceChildren();
    let outcome;
    try {
      outcome = await runQuery(this.clauses(), this.base, this.fetchFn);
    } catch (error) {
      const failure = doc.createElement("p");
      failure.className = "query-error";
      failure.textContent = String(error);
      this.results.appendChild(failure);
      return;
    }
    if ("error" in outcome) {
      const rejection = doc.createElement("p");
      rejection.className = "query-error";
      rejection.textContent = outcome.reason;
      this.results.appendChild(rejection);
      return;
    }
    if (outcome.matches.length === 0) {
      const none = doc.createElement("p");
      none.className = "query-empty";
      none.textContent = "no matches";
      this.results.appendChild(none);
      return;
    }
    const list = doc.createElement("ul");
    for (const name of outcome.matches) {
      const item = doc.createElement("li");
      const link = doc.createElement("a");
      link.href = pageHref(name);
      link.textContent = name;
      item.appendChild(link);
      list.appendChild(item);
    }
    this.results.appendChild(list);
  }
}

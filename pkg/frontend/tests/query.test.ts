import { describe, expect, inject, it } from "vitest";

import { QueryPanel } from "../src/query.js";
import { waitFor } from "./helpers.js";

function mountPanel(base: string): QueryPanel {
  document.body.innerHTML = "<div id=q></div>";
  return new QueryPanel(document.getElementById("q") as HTMLElement, { base });
}

function fillRow(index: number, predicate: string, op: string, value: string): void {
  const row = document.querySelectorAll(".query-clause")[index]!;
  row.querySelector<HTMLInputElement>(".clause-predicate")!.value = predicate;
  row.querySelector<HTMLSelectElement>(".clause-op")!.value = op;
  row.querySelector<HTMLInputElement>(".clause-value")!.value = value;
}

describe("query panel", () => {
  it("answers the same-year question with the planted match", async () => {
    const base = inject("wikiUrl");
    const panel = mountPanel(base);
    panel.addRow();
    fillRow(0, "DateOfBirth", "same-year", "@[[Shakespeare]].DateOfBirth");
    fillRow(1, "DateOfBirth", "!=", "@[[Shakespeare]].DateOfBirth");
    await panel.run();
    const links = [...document.querySelectorAll(".query-results a")];
    expect(links.map((a) => a.textContent)).toEqual(["Marlowe"]);
    expect(links[0]!.getAttribute("href")).toBe("/wiki/Marlowe");
  });

  it("renders an empty-result notice", async () => {
    const base = inject("wikiUrl");
    const panel = mountPanel(base);
    fillRow(0, "LivesIn", "=", "[[Atlantis]]");
    await panel.run();
    await waitFor(() => document.querySelector(".query-empty") !== null);
    expect(document.querySelector(".query-empty")!.textContent).toBe("no matches");
  });

  it("shows the server's reason for a malformed query", async () => {
    const base = inject("wikiUrl");
    const panel = mountPanel(base);
    document.querySelector(".query-clause")!.remove(); // empty clause list
    await panel.run();
    const error = document.querySelector(".query-error");
    expect(error).not.toBeNull();
    expect(error!.textContent).toMatch(/clauses/);
  });
});

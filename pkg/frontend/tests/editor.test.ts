import { describe, expect, inject, it } from "vitest";

import { clientNavigate, enhanceEditor } from "../src/editor.js";
import { failingFetch, waitFor } from "./helpers.js";

async function openDocument(base: string, path: string): Promise<void> {
  await clientNavigate(path, document, base);
}

function submitForm(): void {
  const form = document.querySelector<HTMLFormElement>("form.editform")!;
  form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
}

describe("the live authoring loop", () => {
  it("saving a property makes the object page's sidebar grow a forwardlink, no reload", async () => {
    const base = inject("wikiUrl");
    // a scripted browsing session: open the edit box of a brand-new page
    await openDocument(base, "/wiki/VisitingScholar/edit");
    expect(enhanceEditor(document, { base })).toBe(true);

    const textarea = document.querySelector<HTMLTextAreaElement>("textarea[name=source]")!;
    textarea.value = "LivesIn: [[Leipzig]]\n\nHere for the semester.\n";
    submitForm();

    // the client re-renders the saved page from server HTML, in place
    await waitFor(() => document.body.innerHTML.includes('data-page="VisitingScholar"'));
    expect(document.querySelector(".triple-delta")?.textContent).toContain("+1");

    // follow the freshly minted structure to the object page
    await openDocument(base, "/wiki/Leipzig");
    const sidebar = document.querySelector("aside.sidebar")!.innerHTML;
    expect(sidebar).toContain(">VisitingScholar</a>");
    expect(sidebar).toContain(">LivesIn</a>");
  });

  it("an unchanged submit shows no triple-count change indicator", async () => {
    const base = inject("wikiUrl");
    await openDocument(base, "/wiki/JohnDoe/edit");
    enhanceEditor(document, { base });
    submitForm(); // textarea still holds the stored source
    await waitFor(() => document.body.innerHTML.includes('data-page="JohnDoe"'));
    expect(document.querySelector(".triple-delta")).toBeNull();
  });

  it("a failed save keeps the text and reports inline", async () => {
    document.body.innerHTML = `
      <form class="editform" action="/wiki/Draft" method="post">
        <textarea name="source">precious words</textarea>
      </form>`;
    enhanceEditor(document, { fetchFn: failingFetch() });
    submitForm();
    await waitFor(() => document.querySelector(".save-error") !== null);
    expect(document.querySelector<HTMLTextAreaElement>("textarea[name=source]")!.value).toBe(
      "precious words",
    );
    expect(document.querySelector(".save-error")!.textContent).toMatch(/still here/);
  });
});

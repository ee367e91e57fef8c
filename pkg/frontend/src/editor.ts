// The live authoring loop: submit the edit box over fetch, then re-render
// the current document from server HTML. No full page reload; a failed
// save keeps the text in the box and reports inline.

import { fetchTriples } from "./api.js";
import type { FetchLike, TripleJson } from "./types.js";

export interface EditorOptions {
  base?: string;
  fetchFn?: FetchLike;
  /** Replace the current document with the view at `url`; defaults to
   * fetching the HTML and swapping the body in place. */
  navigate?: (url: string) => Promise<void>;
}

function subjectTriples(triples: TripleJson[], subject: string): Set<string> {
  return new Set(
    triples
      .filter((t) => t.subject === subject)
      .map((t) => JSON.stringify([t.predicate, t.object])),
  );
}

export async function clientNavigate(
  url: string,
  doc: Document,
  base = "",
  fetchFn?: FetchLike,
): Promise<void> {
  const fetcher = fetchFn ?? ((input: string, init?: RequestInit) => globalThis.fetch(input, init));
  const response = await fetcher(`${base}${url}`);
  const html = await response.text();
  const bodyMatch = /<body>([\s\S]*)<\/body>/.exec(html);
  doc.body.innerHTML = bodyMatch ? bodyMatch[1]! : html;
}

/** Wire up the edit form found in `root`; returns false when there is none. */
export function enhanceEditor(root: Document, options: EditorOptions = {}): boolean {
  const form = root.querySelector<HTMLFormElement>("form.editform");
  if (!form) return false;
  const base = options.base ?? "";
  const fetcher =
    options.fetchFn ?? ((input: string, init?: RequestInit) => globalThis.fetch(input, init));
  const navigate =
    options.navigate ?? ((url: string) => clientNavigate(url, root, base, options.fetchFn));

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void submit();
  });

  async function submit(): Promise<void> {
    const textarea = form!.querySelector<HTMLTextAreaElement>("textarea[name=source]");
    if (!textarea) return;
    const action = form!.getAttribute("action") ?? "";
    const subject = decodeURIComponent(action.replace(/^.*\/wiki\//, ""));
    let before: Set<string> | null = null;
    try {
      before = subjectTriples(await fetchTriples(base, options.fetchFn), subject);
    } catch {
      before = null; // counting is cosmetic; saving still proceeds
    }
    let response: Response;
    try {
      response = await fetcher(`${base}${action}`, {
        method: "POST",
        headers: { "content-type": "application/x-www-form-urlencoded" },
        body: "source=" + encodeURIComponent(textarea.value),
        redirect: "follow",
      });
      if (!response.ok) throw new Error(`save failed: ${response.status}`);
    } catch (error) {
      // keep the text, surface the failure next to the form
      let notice = form!.querySelector<HTMLElement>(".save-error");
      if (!notice) {
        notice = root.createElement("p");
        notice.className = "save-error";
        form!.appendChild(notice);
      }
      notice.textContent = `Save failed, your text is still here: ${String(error)}`;
      return;
    }
    let delta: { added: number; removed: number } | null = null;
    if (before) {
      try {
        const after = subjectTriples(await fetchTriples(base, options.fetchFn), subject);
        delta = {
          added: [...after].filter((t) => !before!.has(t)).length,
          removed: [...before].filter((t) => !after.has(t)).length,
        };
      } catch {
        delta = null;
      }
    }
    await navigate(action);
    if (delta && (delta.added || delta.removed)) {
      const indicator = root.createElement("p");
      indicator.className = "triple-delta";
      indicator.textContent = `facts: +${delta.added} −${delta.removed}`;
      (root.querySelector("main.page") ?? root.body).prepend(indicator);
    }
  }

  return true;
}

// End-to-end walkthrough against recorded fixture-backend responses:
// query entry, facet narrowing, then in-document search with three
// highlight rectangles on one page.

import { describe, expect, it } from "vitest";

import { installFixtureFetch, mountTestApp, sizeImage } from "./helpers.js";

function submit(form: Element): void {
  form.dispatchEvent(new Event("submit", { cancelable: true }));
}

describe("fixture corpus walkthrough", () => {
  it("searches, narrows by zone facet, and overlays three regions", async () => {
    const { calls } = installFixtureFetch();
    const { root, app } = mountTestApp("#/search");
    await app.idle();

    // empty query: a hint, no request
    expect(calls).toEqual([]);
    expect(root.querySelector(".hint")).not.toBeNull();

    // enter "plague"
    const input = root.querySelector<HTMLInputElement>(".search-form input")!;
    input.value = "plague";
    submit(root.querySelector("form.search-form")!);
    await app.idle();

    expect(window.location.hash).toBe("#/search?q=plague");
    expect(root.querySelector(".result-total")!.textContent).toBe("2 documents");
    let cards = [...root.querySelectorAll<HTMLElement>(".result-card")];
    // displayed order is the service order, no client-side re-ranking
    expect(cards.map((c) => c.dataset.docId)).toEqual([
      "rpt-bombay-1897",
      "rpt-hongkong-1894",
    ]);
    expect(cards[0].textContent).toContain("The plague appeared in Bombay");
    expect(cards[1].textContent).toContain("plague bacilli hid in the soil");

    // facet counts come straight from the response
    const zoneLabels = () => [
      ...root.querySelectorAll('[data-facet="zone"] .facet-value'),
    ].map((b) => b.textContent);
    expect(zoneLabels()).toEqual(["causes (2)", "outbreak-history (1)"]);

    // clicking zone:causes re-issues the query with the filter applied
    root.querySelector<HTMLButtonElement>('[data-facet="zone"] .facet-value')!
      .click();
    await app.idle();

    expect(window.location.hash).toBe("#/search?q=plague&zone=causes");
    expect(calls.at(-1)).toBe("/search?q=plague+zone%3Acauses");
    cards = [...root.querySelectorAll<HTMLElement>(".result-card")];
    // the service reranks under the filter; the UI must follow its order
    expect(cards.map((c) => c.dataset.docId)).toEqual([
      "rpt-hongkong-1894",
      "rpt-bombay-1897",
    ]);
    // counts updated: the outbreak-history zone dropped out
    expect(zoneLabels()).toEqual(["causes (2)"]);
    expect(
      root.querySelector('[data-facet="zone"] .facet-value.active'),
    ).not.toBeNull();
    // the bombay card narrowed to its single causes-zone snippet
    expect(cards[1].querySelectorAll(".snippet").length).toBe(1);

    // open the document view; the query travels along
    cards[0].querySelector<HTMLAnchorElement>(".result-title a")!.click();
    await app.idle();

    expect(window.location.hash).toBe("#/doc/rpt-hongkong-1894?dq=plague");
    expect(root.querySelector(".doc-head h2")!.textContent).toBe(
      "Notes from the Hongkong outbreak",
    );
    expect(root.querySelector(".doc-counts")!.textContent).toBe(
      "2 zones · 3 entities",
    );
    expect(root.querySelector(".match-total")!.textContent).toBe("1 match");

    // an empty per-document query is rejected locally, no request
    const before = calls.length;
    const docInput = root.querySelector<HTMLInputElement>(
      ".doc-search-form input",
    )!;
    docInput.value = "   ";
    submit(root.querySelector("form.doc-search-form")!);
    expect(root.querySelector(".doc-search-hint")!.textContent).toBe(
      "enter a search term",
    );
    expect(calls.length).toBe(before);

    // search all three aligned words: three matches, three rectangles
    docInput.value = "plague OR bacilli OR soil";
    submit(root.querySelector("form.doc-search-form")!);
    await app.idle();

    const rows = [...root.querySelectorAll(".match-row")];
    expect(rows.map((r) => r.textContent)).toEqual([
      '"plague" · p. 3',
      '"bacilli" · p. 3',
      '"soil" · p. 3',
    ]);

    const img = root.querySelector<HTMLImageElement>("img.page-image")!;
    expect(img.src).toContain("/pages/rpt-hongkong-1894/3.png");
    sizeImage(img, [1000, 1400], [500, 700]); // displayed at 50%
    img.dispatchEvent(new Event("load"));

    const rects = [...root.querySelectorAll<HTMLElement>(".overlay-rect")];
    expect(rects.length).toBe(3);
    expect(rects.map((r) => [
      r.style.left, r.style.top, r.style.width, r.style.height,
    ])).toEqual([
      ["50px", "100px", "40px", "10px"],
      ["95px", "100px", "45px", "10px"],
      ["150px", "100px", "30px", "10px"],
    ]);

    // reload purity: a fresh mount of the same URL reproduces the view
    const snapshot = root.innerHTML;
    const again = mountTestApp(window.location.hash);
    await again.app.idle();
    const img2 = again.root.querySelector<HTMLImageElement>("img.page-image")!;
    sizeImage(img2, [1000, 1400], [500, 700]);
    img2.dispatchEvent(new Event("load"));
    expect(again.root.innerHTML).toBe(snapshot);

    // back to the faceted search URL, as the browser back button would
    window.location.hash = "#/search?q=plague&zone=causes";
    window.dispatchEvent(new Event("hashchange"));
    await again.app.idle();
    const backCards = [
      ...again.root.querySelectorAll<HTMLElement>(".result-card"),
    ];
    expect(backCards.map((c) => c.dataset.docId)).toEqual([
      "rpt-hongkong-1894",
      "rpt-bombay-1897",
    ]);
  });

  it("steps between pages from a match row", async () => {
    installFixtureFetch();
    const { root, app } = mountTestApp(
      "#/doc/rpt-hongkong-1894?dq=plague+OR+bacilli+OR+soil",
    );
    await app.idle();

    root.querySelector<HTMLButtonElement>(".match-row .match-jump")!.click();
    await app.idle();

    expect(window.location.hash).toBe(
      "#/doc/rpt-hongkong-1894?dq=plague+OR+bacilli+OR+soil&page=3",
    );
    expect(root.querySelector(".page-label")!.textContent).toBe("page 3");
    // the single aligned page: nothing before or after it
    expect(root.querySelector<HTMLButtonElement>(".page-prev")!.disabled).toBe(true);
    expect(root.querySelector<HTMLButtonElement>(".page-next")!.disabled).toBe(true);
  });
});

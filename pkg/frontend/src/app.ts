// View controller: the URL hash names the view, the service response
// fills it in, and nothing else holds state. Reloading any URL (or
// using the back button) reproduces the same view from scratch.

import {
  ApiError,
  fetchDocument,
  pageImageUrl,
  searchCorpus,
  searchInDocument,
} from "./api.js";
import { LatestWins } from "./latest.js";
import { drawOverlays, parseRegion, type Region } from "./overlay.js";
import { el, errorBanner, facetGroup, matchRow, resultCard } from "./render.js";
import type {
  DocMatch,
  DocSearchResponse,
  DocumentResponse,
  SearchResponse,
} from "./types.js";
import {
  composeQuery,
  parseRoute,
  routeToHash,
  type DocState,
  type Route,
  type SearchState,
} from "./urlstate.js";

export interface App {
  navigate(hash: string): void;
  idle(): Promise<void>;
  dispose(): void;
}

function messageOf(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  return String(err);
}

export function mountApp(root: HTMLElement): App {
  const header = el("header", "app-header");
  header.appendChild(el("h1", undefined, "Outbreak Report Corpus"));
  const form = el("form", "search-form");
  const input = el("input");
  input.name = "q";
  input.type = "search";
  input.placeholder = "search the reports";
  const submit = el("button", undefined, "Search");
  submit.type = "submit";
  form.append(input, submit);
  header.appendChild(form);

  const view = el("div", "view");
  root.textContent = "";
  root.append(header, view);

  const searchGate = new LatestWins();
  const docGate = new LatestWins();
  let lastHash: string | null = null;
  let pending: Promise<void> = Promise.resolve();

  function currentRoute(): Route {
    return parseRoute(window.location.hash || "#/search");
  }

  function render(force = false): void {
    const hash = window.location.hash || "#/search";
    if (!force && hash === lastHash) return;
    lastHash = hash;
    const route = parseRoute(hash);
    pending = route.view === "search" ? renderSearch(route) : renderDoc(route);
  }

  function navigate(hash: string): void {
    if (window.location.hash === hash) {
      render(true);
      return;
    }
    window.location.hash = hash;
    render();
  }

  const onHashChange = () => render();
  window.addEventListener("hashchange", onHashChange);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const route = currentRoute();
    const base: SearchState = route.view === "search"
      ? route
      : { view: "search", q: "", zone: null, type: null, yearFrom: null, yearTo: null };
    navigate(routeToHash({ ...base, q: input.value.trim() }));
  });

  // ---- search view --------------------------------------------------

  function renderFacets(
    sidebar: HTMLElement,
    state: SearchState,
    response: SearchResponse,
  ): void {
    const toggled = (field: "zone" | "type", key: string) => {
      const next = { ...state, [field]: state[field] === key ? null : key };
      navigate(routeToHash(next));
    };
    sidebar.appendChild(facetGroup(
      "zone",
      response.facets.zone ?? {},
      state.zone,
      (key) => toggled("zone", key),
    ));
    sidebar.appendChild(facetGroup(
      "type",
      response.facets.type ?? {},
      state.type,
      (key) => toggled("type", key),
    ));

    const years = el("section", "facet-group year-range");
    years.dataset.facet = "year";
    years.appendChild(el("h4", undefined, "year range"));
    const fromInput = el("input", "year-from");
    fromInput.placeholder = "from";
    fromInput.value = state.yearFrom ?? "";
    const toInput = el("input", "year-to");
    toInput.placeholder = "to";
    toInput.value = state.yearTo ?? "";
    const apply = el("button", "year-apply", "apply");
    apply.addEventListener("click", () => {
      navigate(routeToHash({
        ...state,
        yearFrom: fromInput.value.trim() || null,
        yearTo: toInput.value.trim() || null,
      }));
    });
    years.append(fromInput, toInput, apply);
    sidebar.appendChild(years);
  }

  async function renderSearch(state: SearchState): Promise<void> {
    input.value = state.q;
    view.textContent = "";
    const layout = el("div", "search-layout");
    const sidebar = el("aside", "facet-sidebar");
    const results = el("section", "results");
    layout.append(sidebar, results);
    view.appendChild(layout);

    const query = composeQuery(state);
    if (!query) {
      results.appendChild(el("p", "hint", "Type a query to search the corpus."));
      return;
    }

    let response: SearchResponse | null;
    try {
      response = await searchGate.run(() => searchCorpus(query));
    } catch (err) {
      results.appendChild(errorBanner(messageOf(err)));
      return;
    }
    if (response === null) return; // superseded by a newer query

    renderFacets(sidebar, state, response);
    results.appendChild(el(
      "p",
      "result-total",
      `${response.total} document${response.total === 1 ? "" : "s"}`,
    ));
    // hits rendered in response order: ranking belongs to the service
    for (const hit of response.hits) {
      results.appendChild(resultCard(hit, (docId) => {
        navigate(routeToHash({ view: "doc", docId, dq: state.q, page: null }));
      }));
    }
  }

  // ---- document view -------------------------------------------------

  function regionsOn(matches: DocMatch[], page: number): Region[] {
    const regions: Region[] = [];
    for (const match of matches) {
      if (match.page !== page || match.region === null) continue;
      const region = parseRegion(match.region);
      if (region) regions.push(region);
    }
    return regions;
  }

  function renderPageArea(
    container: HTMLElement,
    state: DocState,
    matches: DocMatch[],
  ): void {
    const pages = [...new Set(
      matches.flatMap((m) => (m.page !== null && m.region ? [m.page] : [])),
    )].sort((a, b) => a - b);
    if (pages.length === 0) return; // no aligned pages: text matches only

    const current = state.page !== null && pages.includes(state.page)
      ? state.page
      : pages[0];
    const area = el("div", "page-area");

    const nav = el("nav", "page-nav");
    const at = pages.indexOf(current);
    const prev = el("button", "page-prev", "previous");
    prev.disabled = at <= 0;
    prev.addEventListener("click", () => {
      navigate(routeToHash({ ...state, page: pages[at - 1] }));
    });
    const next = el("button", "page-next", "next");
    next.disabled = at >= pages.length - 1;
    next.addEventListener("click", () => {
      navigate(routeToHash({ ...state, page: pages[at + 1] }));
    });
    nav.append(prev, el("span", "page-label", `page ${current}`), next);
    area.appendChild(nav);

    const frame = el("div", "page-frame");
    const img = el("img", "page-image");
    img.alt = `page ${current}`;
    img.src = pageImageUrl(state.docId, current);
    const layer = el("div", "overlay-layer");
    const draw = () => drawOverlays(
      layer,
      regionsOn(matches, current),
      { width: img.naturalWidth, height: img.naturalHeight },
      { width: img.clientWidth, height: img.clientHeight },
    );
    img.addEventListener("load", draw);
    if (img.complete && img.naturalWidth > 0) draw();
    img.addEventListener("error", () => {
      frame.replaceChildren(el(
        "p",
        "page-missing",
        `page image for p. ${current} unavailable`,
      ));
    });
    frame.append(img, layer);
    area.appendChild(frame);
    container.appendChild(area);
  }

  async function renderDoc(state: DocState): Promise<void> {
    view.textContent = "";
    const panel = el("section", "doc-view");
    view.appendChild(panel);

    let doc: DocumentResponse | null;
    try {
      doc = await docGate.run(() => fetchDocument(state.docId));
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        const missing = el("div", "not-found");
        missing.appendChild(el("h2", undefined, "document not found"));
        missing.appendChild(el("p", undefined, state.docId));
        panel.appendChild(missing);
        return;
      }
      panel.appendChild(errorBanner(messageOf(err)));
      return;
    }
    if (doc === null) return;

    const head = el("header", "doc-head");
    head.appendChild(el("h2", undefined, doc.title));
    const bits = [doc.doc_id, String(doc.year)];
    if (doc.main_location) bits.push(doc.main_location);
    head.appendChild(el("p", "doc-meta", bits.join(" · ")));
    head.appendChild(el(
      "p",
      "doc-counts",
      `${doc.zones.length} zones · ${doc.entity_total} entities`,
    ));
    panel.appendChild(head);

    const docForm = el("form", "doc-search-form");
    const docInput = el("input");
    docInput.name = "dq";
    docInput.type = "search";
    docInput.placeholder = "search within this document";
    docInput.value = state.dq;
    const docSubmit = el("button", undefined, "Find");
    docSubmit.type = "submit";
    const hint = el("span", "doc-search-hint");
    docForm.append(docInput, docSubmit, hint);
    docForm.addEventListener("submit", (event) => {
      event.preventDefault();
      const value = docInput.value.trim();
      if (!value) {
        hint.textContent = "enter a search term"; // no request for empty input
        return;
      }
      navigate(routeToHash({ ...state, dq: value, page: null }));
    });
    panel.appendChild(docForm);

    const body = el("div", "doc-body");
    panel.appendChild(body);
    if (!state.dq) return;

    let found: DocSearchResponse | null;
    try {
      found = await docGate.run(() => searchInDocument(state.docId, state.dq));
    } catch (err) {
      body.appendChild(errorBanner(messageOf(err)));
      return;
    }
    if (found === null) return;

    body.appendChild(el(
      "p",
      "match-total",
      `${found.resources.length} match${found.resources.length === 1 ? "" : "es"}`,
    ));
    const list = el("ul", "match-list");
    for (const match of found.resources) {
      list.appendChild(matchRow(match, (picked) => {
        if (picked.page !== null) {
          navigate(routeToHash({ ...state, page: picked.page }));
        }
      }));
    }
    body.appendChild(list);
    renderPageArea(body, state, found.resources);
  }

  render(true);
  return {
    navigate,
    idle: () => pending,
    dispose: () => window.removeEventListener("hashchange", onHashChange),
  };
}

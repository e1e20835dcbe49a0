// DOM builders for the search and document views. All functions build
// detached elements; app.ts owns placement and event wiring.

import { pageImageUrl } from "./api.js";
import { parseRegion } from "./overlay.js";
import type { DocMatch, SearchHit, Snippet } from "./types.js";

const CROP_PAD = 16; // context pixels kept around a cropped region

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function errorBanner(message: string): HTMLElement {
  const banner = el("div", "error-banner");
  banner.setAttribute("role", "alert");
  banner.textContent = message;
  return banner;
}

/**
 * Image snippet cropped client-side: the full page image is offset
 * inside an overflow-hidden window sized to the region plus padding,
 * with the region outlined. Falls back to nothing if the image fails
 * to load; the caller always keeps the text snippet visible.
 */
function snippetClip(docId: string, snippet: Snippet): HTMLElement | null {
  if (snippet.page === null || snippet.regions.length === 0) return null;
  const region = parseRegion(snippet.regions[0]);
  if (!region) return null;
  const clip = el("div", "snippet-clip");
  clip.style.width = `${region.w + 2 * CROP_PAD}px`;
  clip.style.height = `${region.h + 2 * CROP_PAD}px`;
  const img = el("img", "snippet-clip-image");
  img.src = pageImageUrl(docId, snippet.page);
  img.alt = "";
  img.style.left = `${-(region.x - CROP_PAD)}px`;
  img.style.top = `${-(region.y - CROP_PAD)}px`;
  img.addEventListener("error", () => clip.remove());
  const outline = el("div", "snippet-clip-outline");
  outline.style.left = `${CROP_PAD}px`;
  outline.style.top = `${CROP_PAD}px`;
  outline.style.width = `${region.w}px`;
  outline.style.height = `${region.h}px`;
  clip.append(img, outline);
  return clip;
}

export function resultCard(
  hit: SearchHit,
  onOpen: (docId: string) => void,
): HTMLElement {
  const card = el("article", "result-card");
  card.dataset.docId = hit.doc_id;

  const title = el("h3", "result-title");
  const link = el("a", undefined, hit.title);
  link.href = "#";
  link.addEventListener("click", (event) => {
    event.preventDefault();
    onOpen(hit.doc_id);
  });
  title.appendChild(link);
  card.appendChild(title);
  card.appendChild(el("p", "result-meta", `${hit.doc_id} · ${hit.year}`));

  for (const snippet of hit.snippets) {
    const block = el("div", "snippet");
    const text = el("p", "snippet-text", snippet.text);
    if (snippet.page !== null) {
      text.appendChild(el("span", "snippet-page", ` (p. ${snippet.page})`));
    }
    block.appendChild(text);
    const clip = snippetClip(hit.doc_id, snippet);
    if (clip) block.appendChild(clip);
    card.appendChild(block);
  }
  return card;
}

export function facetGroup(
  name: string,
  counts: Record<string, number>,
  activeKey: string | null,
  onPick: (key: string) => void,
): HTMLElement {
  const group = el("section", "facet-group");
  group.dataset.facet = name;
  group.appendChild(el("h4", undefined, name));
  const list = el("ul");
  const keys = Object.keys(counts).sort(
    (a, b) => counts[b] - counts[a] || a.localeCompare(b),
  );
  for (const key of keys) {
    const item = el("li");
    const button = el(
      "button",
      "facet-value" + (key === activeKey ? " active" : ""),
      `${key} (${counts[key]})`,
    );
    button.dataset.key = key;
    button.addEventListener("click", () => onPick(key));
    item.appendChild(button);
    list.appendChild(item);
  }
  group.appendChild(list);
  return group;
}

export function matchRow(
  match: DocMatch,
  onJump: (match: DocMatch) => void,
): HTMLElement {
  const row = el("li", "match-row");
  const where = match.page !== null
    ? `p. ${match.page}`
    : `chars ${match.char_start}-${match.char_end}`;
  const button = el("button", "match-jump", `"${match.match}" · ${where}`);
  button.addEventListener("click", () => onJump(match));
  row.appendChild(button);
  return row;
}

// DOM rendering for everything that is not the canvas: the ranked candidate
// list, the label dropdown, and the one-line status strip.

import { Candidate, PrimitiveEntry } from "./api.js";

export function renderCandidates(list: HTMLElement, candidates: Candidate[]): void {
  list.textContent = "";
  for (const c of candidates) {
    const li = list.ownerDocument.createElement("li");
    const score = c.score === null ? "no score" : c.score.toFixed(3);
    li.textContent = `${c.rank}. ${c.name}  (${score})`;
    list.appendChild(li);
  }
}

export function fillPrimitiveSelect(select: HTMLSelectElement, entries: PrimitiveEntry[]): void {
  select.textContent = "";
  for (const entry of entries) {
    const option = select.ownerDocument.createElement("option");
    option.value = entry.name;
    option.textContent = `${entry.index}. ${entry.name}`;
    select.appendChild(option);
  }
}

export type StatusKind = "idle" | "busy" | "ok" | "saved" | "error" | "offline";

export function setStatus(el: HTMLElement, kind: StatusKind, text: string): void {
  el.dataset.state = kind;
  el.textContent = text;
}

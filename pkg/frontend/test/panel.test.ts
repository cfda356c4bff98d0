import { describe, expect, it } from "vitest";

import { Candidate } from "../src/api.js";
import { fillPrimitiveSelect, renderCandidates, setStatus } from "../src/panel.js";

import registry from "./registry.fixture.json";

describe("renderCandidates", () => {
  const ranked: Candidate[] = [
    { name: "u", rank: 1, score: -1.2 },
    { name: "e", rank: 2, score: -3.4 },
    { name: "k", rank: 3, score: null },
  ];

  it("renders rows in server order with scores", () => {
    const list = document.createElement("ol");
    renderCandidates(list, ranked);
    const rows = Array.from(list.querySelectorAll("li")).map((li) => li.textContent);
    expect(rows).toEqual([
      "1. u  (-1.200)",
      "2. e  (-3.400)",
      "3. k  (no score)",
    ]);
  });

  it("replaces the previous result instead of appending", () => {
    const list = document.createElement("ol");
    renderCandidates(list, ranked);
    renderCandidates(list, ranked.slice(0, 1));
    expect(list.querySelectorAll("li")).toHaveLength(1);
  });
});

describe("fillPrimitiveSelect", () => {
  it("offers every registry primitive, all 69 of them", () => {
    const select = document.createElement("select");
    fillPrimitiveSelect(select, registry);
    expect(select.options).toHaveLength(69);
    expect(select.options[0].value).toBe("a");
    expect(select.options[0].textContent).toBe("1. a");
    expect(select.options[68].value).toBe("tick");
  });

  it("option values are the raw names the save call needs", () => {
    const select = document.createElement("select");
    fillPrimitiveSelect(select, registry);
    const values = Array.from(select.options).map((o) => o.value);
    expect(new Set(values).size).toBe(69);
    expect(values).toContain("halant");
    expect(values).toContain("danda");
  });
});

describe("setStatus", () => {
  it("exposes the state for styling and shows the text", () => {
    const el = document.createElement("span");
    setStatus(el, "offline", "service unreachable");
    expect(el.dataset.state).toBe("offline");
    expect(el.textContent).toBe("service unreachable");
  });
});

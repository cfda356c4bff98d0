import { describe, expect, it } from "vitest";

import { StrokeRecorder, toTriples } from "../src/capture.js";

function drawLine(rec: StrokeRecorder, pointerId = 1) {
  rec.begin(pointerId, 10, 20, 1000.2);
  rec.extend(pointerId, 14.5, 21, 1008.9);
  rec.extend(pointerId, 19, 23.25, 1016.4);
  return rec.finish(pointerId);
}

describe("StrokeRecorder", () => {
  it("keeps points exactly as captured, timestamps rebased to zero", () => {
    const rec = new StrokeRecorder();
    const stroke = drawLine(rec);
    expect(stroke).not.toBeNull();
    expect(stroke!.map((p) => [p.x, p.y])).toEqual([
      [10, 20],
      [14.5, 21],
      [19, 23.25],
    ]);
    expect(stroke!.map((p) => p.t)).toEqual([0, 9, 16]);
  });

  it("timestamps are integers even when event clocks are fractional", () => {
    const rec = new StrokeRecorder();
    const stroke = drawLine(rec)!;
    for (const p of stroke) {
      expect(Number.isInteger(p.t)).toBe(true);
    }
  });

  it("a click produces no stroke", () => {
    const rec = new StrokeRecorder();
    rec.begin(1, 50, 50, 100);
    expect(rec.finish(1)).toBeNull();
    expect(rec.active).toBe(false);
  });

  it("two points are enough", () => {
    const rec = new StrokeRecorder();
    rec.begin(1, 0, 0, 0);
    rec.extend(1, 5, 0, 7);
    expect(rec.finish(1)).toHaveLength(2);
  });

  it("drops a second event landing in the same millisecond", () => {
    const rec = new StrokeRecorder();
    rec.begin(1, 0, 0, 100.0);
    rec.extend(1, 1, 1, 100.4); // rounds to t=0 again
    rec.extend(1, 2, 2, 108.0);
    const stroke = rec.finish(1)!;
    expect(stroke.map((p) => p.t)).toEqual([0, 8]);
    expect(stroke[1].x).toBe(2);
  });

  it("ignores a foreign pointer mid-stroke", () => {
    const rec = new StrokeRecorder();
    rec.begin(1, 0, 0, 0);
    rec.extend(2, 99, 99, 5);
    rec.extend(1, 3, 3, 10);
    expect(rec.finish(2)).toBeNull(); // wrong pointer cannot close it
    expect(rec.active).toBe(true);
    const stroke = rec.finish(1)!;
    expect(stroke).toHaveLength(2);
    expect(stroke[1].x).toBe(3);
  });

  it("cancel discards everything", () => {
    const rec = new StrokeRecorder();
    rec.begin(1, 0, 0, 0);
    rec.extend(1, 1, 1, 5);
    rec.cancel();
    expect(rec.active).toBe(false);
    expect(rec.trace).toHaveLength(0);
  });

  it("toTriples emits [x, y, t] in draw order", () => {
    const rec = new StrokeRecorder();
    const stroke = drawLine(rec)!;
    expect(toTriples(stroke)).toEqual([
      [10, 20, 0],
      [14.5, 21, 9],
      [19, 23.25, 16],
    ]);
  });
});

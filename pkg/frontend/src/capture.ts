// One stroke is everything between a pointerdown and its pointerup. Points
// keep their pointer-event timestamps (rebased so the stroke starts at 0) and
// CSS-pixel coordinates, y growing downward. No resampling, no smoothing:
// cleanup is the engine's job, the pad reports what the pointer did.

import { InkTriple } from "./api.js";

export interface PadPoint {
  x: number;
  y: number;
  t: number;
}

export class StrokeRecorder {
  private points: PadPoint[] = [];
  private t0 = 0;
  private pointer: number | null = null;

  get active(): boolean {
    return this.pointer !== null;
  }

  /** Points so far, for live rendering while the pen is down. */
  get trace(): readonly PadPoint[] {
    return this.points;
  }

  begin(pointerId: number, x: number, y: number, timeStamp: number): void {
    this.pointer = pointerId;
    this.t0 = timeStamp;
    this.points = [{ x, y, t: 0 }];
  }

  extend(pointerId: number, x: number, y: number, timeStamp: number): void {
    if (this.pointer !== pointerId) {
      return;
    }
    const t = Math.round(timeStamp - this.t0);
    const last = this.points[this.points.length - 1];
    if (t <= last.t) {
      // a second event inside the same millisecond adds no trajectory
      return;
    }
    this.points.push({ x, y, t });
  }

  /**
   * Close the stroke. Returns null for a plain click (fewer than two
   * points), which callers must not send anywhere.
   */
  finish(pointerId: number): PadPoint[] | null {
    if (this.pointer !== pointerId) {
      return null;
    }
    this.pointer = null;
    const pts = this.points;
    this.points = [];
    return pts.length >= 2 ? pts : null;
  }

  cancel(): void {
    this.pointer = null;
    this.points = [];
  }
}

export function toTriples(points: readonly PadPoint[]): InkTriple[] {
  return points.map((p) => [p.x, p.y, p.t]);
}

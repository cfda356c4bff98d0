import { ApiClient, ApiError, RecognizeResult } from "./api.js";
import { PadPoint, StrokeRecorder, toTriples } from "./capture.js";
import { RequestQueue } from "./flight.js";
import { fillPrimitiveSelect, renderCandidates, setStatus } from "./panel.js";
import { clear, drawCriticalPoints, drawSmoothed, drawTrace, fitCanvas } from "./overlay.js";

const params = new URLSearchParams(window.location.search);
const api = new ApiClient(params.get("api") ?? "http://127.0.0.1:8600");

const canvas = document.getElementById("pad") as HTMLCanvasElement;
const candidateList = document.getElementById("candidates") as HTMLElement;
const labelSelect = document.getElementById("label") as HTMLSelectElement;
const saveButton = document.getElementById("save") as HTMLButtonElement;
const clearButton = document.getElementById("clear") as HTMLButtonElement;
const retryButton = document.getElementById("retry") as HTMLButtonElement;
const status = document.getElementById("status") as HTMLElement;

const ctx = fitCanvas(canvas);
const recorder = new StrokeRecorder();

// the stroke whose result is on screen; save and retry act on this one
let shown: PadPoint[] | null = null;
let lastFailed: PadPoint[] | null = null;

const queue = new RequestQueue<PadPoint[], RecognizeResult>(
  (stroke) => api.recognize(toTriples(stroke)),
  (stroke, result) => {
    shown = stroke;
    lastFailed = null;
    retryButton.hidden = true;
    clear(ctx, canvas);
    drawTrace(ctx, stroke);
    drawSmoothed(ctx, result.smoothed);
    drawCriticalPoints(ctx, result.critical_points);
    renderCandidates(candidateList, result.candidates);
    saveButton.disabled = false;
    setStatus(status, "ok", `top: ${result.candidates[0]?.name ?? "?"}`);
  },
  (stroke, err) => {
    if (err instanceof ApiError) {
      setStatus(status, "error", `${err.code}: ${err.message}`);
    } else {
      // no response at all; keep the stroke so the user can retry
      lastFailed = stroke;
      retryButton.hidden = false;
      setStatus(status, "offline", "service unreachable; draw on, or retry");
    }
  },
);

canvas.addEventListener("pointerdown", (ev) => {
  canvas.setPointerCapture(ev.pointerId);
  recorder.begin(ev.pointerId, ev.offsetX, ev.offsetY, ev.timeStamp);
  clear(ctx, canvas);
  drawTrace(ctx, recorder.trace);
});

canvas.addEventListener("pointermove", (ev) => {
  if (!recorder.active) {
    return;
  }
  recorder.extend(ev.pointerId, ev.offsetX, ev.offsetY, ev.timeStamp);
  clear(ctx, canvas);
  drawTrace(ctx, recorder.trace);
});

canvas.addEventListener("pointerup", (ev) => {
  recorder.extend(ev.pointerId, ev.offsetX, ev.offsetY, ev.timeStamp);
  const stroke = recorder.finish(ev.pointerId);
  if (stroke === null) {
    return; // a click is not a stroke
  }
  setStatus(status, "busy", queue.pending > 0 ? "queued..." : "recognizing...");
  queue.push(stroke);
});

canvas.addEventListener("pointercancel", () => {
  recorder.cancel();
  clear(ctx, canvas);
});

clearButton.addEventListener("click", () => {
  recorder.cancel();
  shown = null;
  clear(ctx, canvas);
  candidateList.textContent = "";
  saveButton.disabled = true;
  setStatus(status, "idle", "draw a stroke");
});

retryButton.addEventListener("click", () => {
  if (lastFailed === null) {
    return;
  }
  const stroke = lastFailed;
  lastFailed = null;
  retryButton.hidden = true;
  setStatus(status, "busy", "recognizing...");
  queue.push(stroke);
});

saveButton.addEventListener("click", async () => {
  if (shown === null) {
    return;
  }
  const label = labelSelect.value;
  saveButton.disabled = true;
  try {
    await api.recognize(toTriples(shown), { save: true, label });
    setStatus(status, "saved", `saved as '${label}'`);
  } catch (err) {
    const msg = err instanceof ApiError ? err.message : "service unreachable";
    setStatus(status, "error", `save failed: ${msg}`);
  } finally {
    saveButton.disabled = false;
  }
});

async function boot(): Promise<void> {
  setStatus(status, "idle", "draw a stroke");
  saveButton.disabled = true;
  try {
    const entries = await api.primitives();
    fillPrimitiveSelect(labelSelect, entries);
  } catch {
    setStatus(status, "offline", `no service at ${api.base}; drawing still works`);
  }
}

void boot();

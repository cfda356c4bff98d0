// Thin client for the recognition service. The pad talks to exactly three
// endpoints and knows nothing about the engine beyond their JSON shapes.

export type InkTriple = [number, number, number];

export interface Candidate {
  name: string;
  rank: number;
  score: number | null;
}

export interface RecognizeResult {
  candidates: Candidate[];
  smoothed: [number, number][];
  critical_points: [number, number][];
  feature: number[];
  saved?: boolean;
}

export interface PrimitiveEntry {
  index: number;
  name: string;
}

/** A response the service itself produced (as opposed to a network failure). */
export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export interface RecognizeOptions {
  top?: number;
  save?: boolean;
  label?: string | null;
}

export class ApiClient {
  base: string;

  constructor(base: string) {
    this.base = base.replace(/\/+$/, "");
  }

  async health(): Promise<{ status: string }> {
    return unwrap(await fetch(this.base + "/api/health"));
  }

  async primitives(): Promise<PrimitiveEntry[]> {
    return unwrap(await fetch(this.base + "/api/primitives"));
  }

  async recognize(points: InkTriple[], opts: RecognizeOptions = {}): Promise<RecognizeResult> {
    const body = {
      points,
      y_down: true,
      top: opts.top ?? 5,
      save: opts.save ?? false,
      label: opts.label ?? null,
    };
    const res = await fetch(this.base + "/api/recognize", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return unwrap(res);
  }
}

async function unwrap(res: Response): Promise<any> {
  if (res.ok) {
    return res.json();
  }
  let code = "http-" + res.status;
  let message = res.statusText || "request failed";
  try {
    const body = await res.json();
    if (body && body.error) {
      code = body.error.code;
      message = body.error.message;
    }
  } catch {
    // error body was not JSON; keep the status line
  }
  throw new ApiError(res.status, code, message);
}

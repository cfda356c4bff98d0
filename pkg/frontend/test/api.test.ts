import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

// api.ts only touches ok/status/statusText/json, so a plain object will do
function jsonResponse(status: number, body: unknown) {
  return {
    ok: status >= 200 && status < 300,
    status,
    statusText: "",
    json: async () => body,
  };
}

const okResult = {
  candidates: [{ name: "u", rank: 1, score: -1.5 }],
  smoothed: [],
  critical_points: [],
  feature: [0, 0, 0, 0, 0, 0, 0, 0],
};

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient.recognize", () => {
  it("posts the stroke with y_down true and the defaults", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(200, okResult));
    vi.stubGlobal("fetch", fetchMock);

    const api = new ApiClient("http://host:8600");
    const result = await api.recognize([[0, 0, 0], [5, 0, 8]]);

    expect(result.candidates[0].name).toBe("u");
    expect(fetchMock).toHaveBeenCalledTimes(1);
    const [url, init] = fetchMock.mock.calls[0];
    expect(url).toBe("http://host:8600/api/recognize");
    expect(init.method).toBe("POST");
    expect(JSON.parse(init.body)).toEqual({
      points: [[0, 0, 0], [5, 0, 8]],
      y_down: true,
      top: 5,
      save: false,
      label: null,
    });
  });

  it("passes save and label through for the labelling flow", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(200, { ...okResult, saved: true }));
    vi.stubGlobal("fetch", fetchMock);

    const api = new ApiClient("http://host:8600/"); // trailing slash tolerated
    const result = await api.recognize([[0, 0, 0], [5, 0, 8]], { save: true, label: "u", top: 3 });

    expect(result.saved).toBe(true);
    const body = JSON.parse(fetchMock.mock.calls[0][1].body);
    expect(body.save).toBe(true);
    expect(body.label).toBe("u");
    expect(body.top).toBe(3);
    expect(fetchMock.mock.calls[0][0]).toBe("http://host:8600/api/recognize");
  });

  it("turns a service error body into an ApiError with its code", async () => {
    vi.stubGlobal("fetch", vi.fn().mockResolvedValue(
      jsonResponse(400, { error: { code: "bad-stroke", message: "points must be a list" } }),
    ));

    const api = new ApiClient("http://host:8600");
    const err = await api.recognize([[0, 0, 0]]).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(400);
    expect(err.code).toBe("bad-stroke");
    expect(err.message).toContain("points");
  });

  it("survives a non-JSON error body", async () => {
    vi.stubGlobal("fetch", vi.fn().mockResolvedValue({
      ok: false,
      status: 502,
      statusText: "Bad Gateway",
      json: async () => {
        throw new SyntaxError("not json");
      },
    }));

    const api = new ApiClient("http://host:8600");
    const err = await api.recognize([[0, 0, 0], [1, 1, 5]]).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe("http-502");
  });

  it("lets a network failure through untouched", async () => {
    vi.stubGlobal("fetch", vi.fn().mockRejectedValue(new TypeError("fetch failed")));

    const api = new ApiClient("http://host:8600");
    const err = await api.recognize([[0, 0, 0], [1, 1, 5]]).catch((e) => e);
    expect(err).toBeInstanceOf(TypeError);
    expect(err).not.toBeInstanceOf(ApiError);
  });
});

describe("ApiClient.primitives", () => {
  it("fetches the registry listing", async () => {
    const entries = [{ index: 1, name: "a" }];
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(200, entries));
    vi.stubGlobal("fetch", fetchMock);

    const api = new ApiClient("http://host:8600");
    expect(await api.primitives()).toEqual(entries);
    expect(fetchMock.mock.calls[0][0]).toBe("http://host:8600/api/primitives");
  });
});

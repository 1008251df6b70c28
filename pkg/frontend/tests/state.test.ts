import { describe, expect, it } from "vitest";

import type { ViewPayload } from "../src/api.js";
import {
  applyEditResponse,
  applySampleResponse,
  clampAlpha,
  conditionSetFor,
  initialState,
  sliderDelta,
  SLIDER_MAX,
  SLIDER_MIN,
  toggleCondition,
} from "../src/state.js";

const ATTRS = ["pose", "smile", "age", "gender", "eyeglasses"];

function payload(overrides: Partial<ViewPayload> = {}): ViewPayload {
  return {
    latent: [0.25, -1.5, 3.0078125, 0.1],
    space: "Z",
    scores: { pose: 0.1, smile: -0.2, age: 0.3, gender: 0.4, eyeglasses: -0.5 },
    distances: { pose: 1.25, smile: 0.5, age: -0.75, gender: 2.0, eyeglasses: 0.0 },
    face: {},
    svg: "<svg/>",
    history_length: 1,
    seed: 7,
    ...overrides,
  };
}

describe("clampAlpha", () => {
  it("passes in-range values through untouched", () => {
    expect(clampAlpha(2.5)).toEqual({ alpha: 2.5, warned: false });
    expect(clampAlpha(SLIDER_MIN)).toEqual({ alpha: SLIDER_MIN, warned: false });
  });

  it("clamps and warns outside [-6, 6]", () => {
    expect(clampAlpha(7.2)).toEqual({ alpha: SLIDER_MAX, warned: true });
    expect(clampAlpha(-100)).toEqual({ alpha: SLIDER_MIN, warned: true });
  });
});

describe("condition toggles", () => {
  it("never includes the active attribute in its own condition set", () => {
    let state = initialState(ATTRS);
    state = toggleCondition(state, "gender");
    state = toggleCondition(state, "age");
    expect(conditionSetFor(state, "age")).toEqual(["gender"]);
    expect(conditionSetFor(state, "pose")).toEqual(["age", "gender"]);
  });

  it("toggles off again", () => {
    let state = initialState(ATTRS);
    state = toggleCondition(state, "gender");
    state = toggleCondition(state, "gender");
    expect(conditionSetFor(state, "age")).toEqual([]);
  });
});

describe("slider deltas", () => {
  it("sends only the change relative to the current position", () => {
    let state = initialState(ATTRS);
    expect(sliderDelta(state, "age", 3)).toBe(3);
    state = applyEditResponse(state, "age", 3, payload(), false);
    expect(sliderDelta(state, "age", 0)).toBe(-3);
    expect(sliderDelta(state, "age", 3)).toBe(0);
  });
});

describe("response passthrough", () => {
  it("stores every number exactly as the service sent it", () => {
    const state = applyEditResponse(initialState(ATTRS), "age", 1, payload(), false);
    expect(state.latent).toEqual([0.25, -1.5, 3.0078125, 0.1]);
    expect(state.scores.age).toBe(0.3);
    expect(state.distances.gender).toBe(2.0);
    expect(state.historyLength).toBe(1);
  });

  it("sampling resets sliders and clears transient ui state", () => {
    let state = initialState(ATTRS);
    state = applyEditResponse(state, "age", 4, payload(), true);
    expect(state.sliders.age).toBe(4);
    expect(state.warning).not.toBeNull();
    state = applySampleResponse(state, payload({ history_length: 0 }));
    expect(Object.values(state.sliders).every((v) => v === 0)).toBe(true);
    expect(state.warning).toBeNull();
    expect(state.resolvedCosines).toBeNull();
    expect(state.historyLength).toBe(0);
  });

  it("keeps the clamp warning on clamped edits", () => {
    const state = applyEditResponse(initialState(ATTRS), "age", 6, payload(), true);
    expect(state.warning).toMatch(/clamped/);
  });
});

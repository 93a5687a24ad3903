import { describe, expect, it } from "vitest";

import {
  TWO_PI,
  defaultState,
  layerAnchor,
  layersParam,
  semiAxes,
  setAnchor,
  setAspectRatio,
  setPeriod,
  setT,
  toggleLayer,
  wrapT,
} from "../src/state.js";

describe("wrapT", () => {
  it("wraps into [0, 2pi)", () => {
    expect(wrapT(0)).toBe(0);
    expect(wrapT(TWO_PI)).toBeCloseTo(0, 12);
    expect(wrapT(TWO_PI + 0.5)).toBeCloseTo(0.5, 12);
    expect(wrapT(-0.5)).toBeCloseTo(TWO_PI - 0.5, 12);
  });

  it("scrubbing a full period returns to the same frame parameter", () => {
    const s0 = setT(defaultState(), 1.234);
    const s1 = setT(s0, 1.234 + TWO_PI);
    expect(s1.t).toBeCloseTo(s0.t, 12);
  });
});

describe("configuration transitions", () => {
  it("validates the aspect ratio", () => {
    expect(() => setAspectRatio(defaultState(), 1.0)).toThrow();
    expect(setAspectRatio(defaultState(), 1.5).aOverB).toBe(1.5);
  });

  it("validates the period", () => {
    expect(() => setPeriod(defaultState(), 2)).toThrow();
    expect(() => setPeriod(defaultState(), 4.5)).toThrow();
    expect(setPeriod(defaultState(), 7).n).toBe(7);
  });

  it("toggles layers without mutating previous state", () => {
    const s0 = defaultState();
    const s1 = toggleLayer(s0, "pedal");
    expect(s1.layers.has("pedal")).toBe(true);
    expect(s0.layers.has("pedal")).toBe(false);
    const s2 = toggleLayer(s1, "pedal");
    expect(s2.layers.has("pedal")).toBe(false);
  });

  it("keeps b fixed at 1", () => {
    expect(semiAxes(setAspectRatio(defaultState(), 1.75))).toEqual({
      a: 1.75,
      b: 1,
    });
  });
});

describe("layersParam", () => {
  it("excludes the always-drawn orbit", () => {
    expect(layersParam(defaultState())).toBe("");
  });

  it("tags anchored layers with the selected anchor", () => {
    let s = toggleLayer(defaultState(), "outer");
    s = toggleLayer(s, "pedal");
    s = setAnchor(s, "f2");
    expect(layersParam(s)).toBe("outer,pedal:f2");
  });

  it("emits layers in fixed legend order regardless of toggle order", () => {
    let s = defaultState();
    s = toggleLayer(s, "dual");
    s = toggleLayer(s, "inner");
    s = toggleLayer(s, "evolute");
    expect(layersParam(s)).toBe("inner,evolute,dual:f1");
  });

  it("falls back to f1 for focus-only layers when the anchor is O", () => {
    expect(layerAnchor("pedal", "O")).toBe("O");
    expect(layerAnchor("inversive", "O")).toBe("f1");
    expect(layerAnchor("dual", "f2")).toBe("f2");

    let s = toggleLayer(defaultState(), "inversive");
    s = setAnchor(s, "O");
    expect(layersParam(s)).toBe("inversive:f1");
  });
});

/** View state for the explorer: configuration sliders, the family
 * parameter t, the anchor selection, and the enabled layer set. All
 * transitions are pure so they can be unit-tested without a DOM.
 */

import {
  ANCHORED_LAYERS,
  FOCUS_ONLY_LAYERS,
  LAYER_ORDER,
  type AnchorRole,
  type LayerName,
} from "./types.js";

export interface ViewState {
  aOverB: number;
  n: number;
  t: number;
  anchor: AnchorRole;
  layers: ReadonlySet<LayerName>;
  clusterFilter: number | null; // null = show all clusters
  animating: boolean;
}

export const TWO_PI = 2 * Math.PI;

export function wrapT(t: number): number {
  const wrapped = t % TWO_PI;
  return wrapped < 0 ? wrapped + TWO_PI : wrapped;
}

export function defaultState(): ViewState {
  return {
    aOverB: 2.0,
    n: 5,
    t: 0,
    anchor: "f1",
    layers: new Set<LayerName>(["orbit"]),
    clusterFilter: null,
    animating: false,
  };
}

export function setAspectRatio(state: ViewState, aOverB: number): ViewState {
  if (!(aOverB > 1)) {
    throw new Error(`aspect ratio must exceed 1, got ${aOverB}`);
  }
  return { ...state, aOverB };
}

export function setPeriod(state: ViewState, n: number): ViewState {
  if (!Number.isInteger(n) || n < 3) {
    throw new Error(`N must be an integer >= 3, got ${n}`);
  }
  return { ...state, n };
}

export function setT(state: ViewState, t: number): ViewState {
  return { ...state, t: wrapT(t) };
}

export function setAnchor(state: ViewState, anchor: AnchorRole): ViewState {
  return { ...state, anchor };
}

export function toggleLayer(state: ViewState, layer: LayerName): ViewState {
  const layers = new Set(state.layers);
  if (layers.has(layer)) {
    layers.delete(layer);
  } else {
    layers.add(layer);
  }
  return { ...state, layers };
}

export function setClusterFilter(
  state: ViewState,
  cluster: number | null,
): ViewState {
  return { ...state, clusterFilter: cluster };
}

/** Anchor role actually sent for a layer: focus-only layers fall back
 * to f1 when the selected anchor is the center. */
export function layerAnchor(layer: LayerName, anchor: AnchorRole): AnchorRole {
  if (FOCUS_ONLY_LAYERS.has(layer) && anchor === "O") {
    return "f1";
  }
  return anchor;
}

/** The `layers` query parameter for /api/orbit. The orbit itself is
 * always returned by the endpoint and is not a request layer. */
export function layersParam(state: ViewState): string {
  const parts: string[] = [];
  for (const layer of LAYER_ORDER) {
    if (layer === "orbit" || !state.layers.has(layer)) {
      continue;
    }
    if (ANCHORED_LAYERS.has(layer)) {
      parts.push(`${layer}:${layerAnchor(layer, state.anchor)}`);
    } else {
      parts.push(layer);
    }
  }
  return parts.join(",");
}

/** Billiard semi-axes with b fixed at 1, matching the server's sweeps. */
export function semiAxes(state: ViewState): { a: number; b: number } {
  return { a: state.aOverB, b: 1.0 };
}

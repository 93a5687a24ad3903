/** Shared types mirroring the HTTP API payloads. */

export type Point = [number, number];

export interface FamilyResponse {
  a_c: number;
  b_c: number;
  J: number;
  L: number;
}

export interface OrbitResponse {
  t: number;
  closure_error: number;
  vertices: Point[];
  tangency_points: Point[];
  layers: Record<string, Point[]>;
}

export interface InvariantSample {
  t: number;
  value: number | number[];
}

export interface InvariantSeries {
  id: string;
  anchor: string | null;
  values: InvariantSample[];
  mean: number | number[];
  verdict: "invariant" | "not_invariant" | "degenerate";
}

export interface InvariantsResponse {
  a: number;
  b: number;
  n: number;
  samples: number;
  anchor: string | null;
  invariants: InvariantSeries[];
}

export interface CatalogVariant {
  sub_id: string;
  expression: string;
  which_n: string;
  anchor: string;
  closed_form: string | null;
  proof_status: string;
  discrepancy: string | null;
}

export interface CatalogEntry {
  id: string;
  cluster: number;
  variants: CatalogVariant[];
}

/** Anchor roles the server accepts for derived-layer construction. */
export type AnchorRole = "O" | "f1" | "f2";

/** Derived-polygon layers, in fixed legend order. */
export const LAYER_ORDER = [
  "orbit",
  "outer",
  "inner",
  "pedal",
  "antipedal",
  "evolute",
  "inversive",
  "polar",
  "dual",
] as const;

export type LayerName = (typeof LAYER_ORDER)[number];

/** Layers that require an anchor point on the server. */
export const ANCHORED_LAYERS: ReadonlySet<LayerName> = new Set([
  "pedal",
  "antipedal",
  "inversive",
  "polar",
  "dual",
]);

/** Layers whose anchor must be a focus (inversion center cannot be O). */
export const FOCUS_ONLY_LAYERS: ReadonlySet<LayerName> = new Set([
  "inversive",
  "polar",
  "dual",
]);

/** Invariant panel model: one row per catalog variant with the current
 * value, running min/max over the scrub session, and a steady/varying
 * badge. Verdicts come from the server's series classification; the
 * client only tracks extremes of values the server already produced.
 */

import type { CatalogEntry, InvariantSeries } from "./types.js";

export type Badge = "steady" | "varying" | "degenerate";

export interface PanelRow {
  id: string;
  cluster: number;
  admissible: boolean;
  condition: string; // human-readable "which N" condition for greyed rows
  anchor: string | null;
  value: number[] | null; // latest sample, vectors kept as-is
  min: number[] | null;
  max: number[] | null;
  badge: Badge | null;
  discrepancy: string | null;
}

function asVector(value: number | number[]): number[] {
  return Array.isArray(value) ? value : [value];
}

export function badgeFor(verdict: InvariantSeries["verdict"]): Badge {
  switch (verdict) {
    case "invariant":
      return "steady";
    case "not_invariant":
      return "varying";
    case "degenerate":
      return "degenerate";
  }
}

/** Accumulates component-wise extremes across scrub frames. */
export class RunningExtremes {
  private extremes = new Map<string, { min: number[]; max: number[] }>();

  observe(id: string, value: number | number[]): void {
    const v = asVector(value);
    const entry = this.extremes.get(id);
    if (!entry) {
      this.extremes.set(id, { min: [...v], max: [...v] });
      return;
    }
    for (let i = 0; i < v.length; i++) {
      entry.min[i] = Math.min(entry.min[i], v[i]);
      entry.max[i] = Math.max(entry.max[i], v[i]);
    }
  }

  get(id: string): { min: number[]; max: number[] } | null {
    return this.extremes.get(id) ?? null;
  }

  reset(): void {
    this.extremes.clear();
  }
}

const CONDITION_LABELS: Record<string, string> = {
  all: "all N",
  odd: "odd N",
  even: "even N",
  "mod4=0": "N = 0 (mod 4)",
  "mod4=2": "N = 2 (mod 4)",
  "mod4!=0": "N ≠ 0 (mod 4)",
  "mod4!=2": "N ≠ 2 (mod 4)",
  "!=4": "N ≠ 4",
  "=4": "N = 4",
  "=3": "N = 3",
  ">4": "N > 4",
};

export function conditionLabel(whichN: string): string {
  return CONDITION_LABELS[whichN] ?? whichN;
}

export function isAdmissible(whichN: string, n: number): boolean {
  switch (whichN) {
    case "all":
      return true;
    case "odd":
      return n % 2 === 1;
    case "even":
      return n % 2 === 0;
    case "mod4=0":
      return n % 4 === 0;
    case "mod4=2":
      return n % 4 === 2;
    case "mod4!=0":
      return n % 4 !== 0;
    case "mod4!=2":
      return n % 4 !== 2;
    case "!=4":
      return n !== 4;
    case "=4":
      return n === 4;
    case "=3":
      return n === 3;
    case ">4":
      return n > 4;
    default:
      return false;
  }
}

/**
 * Builds the full panel: every catalog variant appears exactly once,
 * greyed with its condition when inadmissible at the current N, filled
 * from the latest server series when admissible.
 */
export function buildPanel(
  catalog: CatalogEntry[],
  series: InvariantSeries[],
  n: number,
  clusterFilter: number | null,
  extremes: RunningExtremes,
): PanelRow[] {
  const byId = new Map(series.map((s) => [s.id, s]));
  const rows: PanelRow[] = [];
  for (const entry of catalog) {
    if (clusterFilter !== null && entry.cluster !== clusterFilter) {
      continue;
    }
    for (const variant of entry.variants) {
      const admissible = isAdmissible(variant.which_n, n);
      const live = byId.get(variant.sub_id);
      let value: number[] | null = null;
      let badge: Badge | null = null;
      if (admissible && live && live.values.length > 0) {
        value = asVector(live.values[live.values.length - 1].value);
        extremes.observe(variant.sub_id, value);
        badge = badgeFor(live.verdict);
      }
      const extreme = extremes.get(variant.sub_id);
      rows.push({
        id: variant.sub_id,
        cluster: entry.cluster,
        admissible,
        condition: conditionLabel(variant.which_n),
        anchor: live?.anchor ?? null,
        value,
        min: extreme ? [...extreme.min] : null,
        max: extreme ? [...extreme.max] : null,
        badge,
        discrepancy: variant.discrepancy,
      });
    }
  }
  return rows;
}

export function formatValue(value: number[] | null, digits = 6): string {
  if (value === null) {
    return "—";
  }
  const parts = value.map((v) => v.toFixed(digits));
  return value.length === 1 ? parts[0] : `[${parts.join(", ")}]`;
}

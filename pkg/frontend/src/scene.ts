/** Canvas scene construction: world-to-screen fitting, polygon paths,
 * and the fixed layer legend. The geometry itself (vertices, derived
 * polygons, ellipse axes) always comes from the server; this module
 * only maps server coordinates onto the canvas.
 */

import type { Point } from "./types.js";

export interface Viewport {
  width: number;
  height: number;
  /** world-units of padding around the fitted bounding box */
  margin: number;
}

export interface Transform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

/** Fixed legend: layer key -> stroke color, in drawing order. */
export const LAYER_STYLES: ReadonlyArray<{ key: string; color: string; label: string }> = [
  { key: "billiard", color: "#1f2937", label: "billiard" },
  { key: "caustic", color: "#9ca3af", label: "caustic" },
  { key: "orbit", color: "#2563eb", label: "orbit" },
  { key: "outer", color: "#16a34a", label: "outer" },
  { key: "inner", color: "#ca8a04", label: "inner" },
  { key: "pedal", color: "#dc2626", label: "pedal" },
  { key: "antipedal", color: "#db2777", label: "antipedal" },
  { key: "evolute", color: "#7c3aed", label: "evolute" },
  { key: "inversive", color: "#0891b2", label: "inversive" },
  { key: "polar", color: "#ea580c", label: "polar" },
  { key: "dual", color: "#4d7c0f", label: "dual" },
];

export function styleFor(layerKey: string): { color: string; label: string } {
  const base = layerKey.split(":")[0];
  const style = LAYER_STYLES.find((s) => s.key === base);
  return style ?? { color: "#6b7280", label: base };
}

export function boundingBox(pointSets: Point[][]): {
  minX: number;
  maxX: number;
  minY: number;
  maxY: number;
} {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const points of pointSets) {
    for (const [x, y] of points) {
      minX = Math.min(minX, x);
      maxX = Math.max(maxX, x);
      minY = Math.min(minY, y);
      maxY = Math.max(maxY, y);
    }
  }
  if (!Number.isFinite(minX)) {
    throw new Error("cannot fit an empty scene");
  }
  return { minX, maxX, minY, maxY };
}

/** Uniform scale + centering that fits the bounding box into the
 * viewport with the y-axis pointing up. */
export function fitTransform(pointSets: Point[][], view: Viewport): Transform {
  const box = boundingBox(pointSets);
  const spanX = box.maxX - box.minX + 2 * view.margin;
  const spanY = box.maxY - box.minY + 2 * view.margin;
  const scale = Math.min(view.width / spanX, view.height / spanY);
  const centerX = (box.minX + box.maxX) / 2;
  const centerY = (box.minY + box.maxY) / 2;
  return {
    scale,
    offsetX: view.width / 2 - scale * centerX,
    offsetY: view.height / 2 + scale * centerY,
  };
}

export function toScreen(p: Point, tr: Transform): Point {
  return [tr.scale * p[0] + tr.offsetX, -tr.scale * p[1] + tr.offsetY];
}

/** Closed polyline of ellipse outline samples for drawing. The semi-axes
 * are server-provided values (billiard config or /api/family caustic). */
export function ellipseOutline(a: number, b: number, segments = 128): Point[] {
  const pts: Point[] = [];
  for (let i = 0; i < segments; i++) {
    const t = (2 * Math.PI * i) / segments;
    pts.push([a * Math.cos(t), b * Math.sin(t)]);
  }
  return pts;
}

export function drawPolygon(
  ctx: CanvasRenderingContext2D,
  points: Point[],
  tr: Transform,
  color: string,
  lineWidth = 1.5,
): void {
  if (points.length === 0) {
    return;
  }
  ctx.beginPath();
  const [x0, y0] = toScreen(points[0], tr);
  ctx.moveTo(x0, y0);
  for (let i = 1; i < points.length; i++) {
    const [x, y] = toScreen(points[i], tr);
    ctx.lineTo(x, y);
  }
  ctx.closePath();
  ctx.strokeStyle = color;
  ctx.lineWidth = lineWidth;
  ctx.stroke();
}

export function drawMarker(
  ctx: CanvasRenderingContext2D,
  p: Point,
  tr: Transform,
  color: string,
  radius = 4,
): void {
  const [x, y] = toScreen(p, tr);
  ctx.beginPath();
  ctx.arc(x, y, radius, 0, 2 * Math.PI);
  ctx.fillStyle = color;
  ctx.fill();
}

/** Browser entry point: wires the controls, the canvas scene, and the
 * invariant panel to the HTTP API. All numbers shown originate from the
 * server; errors surface as a non-blocking banner while the last good
 * frame stays on screen.
 */

import { ApiClient, LatestOnly } from "./api.js";
import { Animator, rateLimited } from "./animation.js";
import {
  RunningExtremes,
  buildPanel,
  formatValue,
  type PanelRow,
} from "./invariants.js";
import {
  defaultState,
  layersParam,
  semiAxes,
  setAnchor,
  setAspectRatio,
  setClusterFilter,
  setPeriod,
  setT,
  toggleLayer,
  type ViewState,
} from "./state.js";
import {
  LAYER_STYLES,
  drawMarker,
  drawPolygon,
  ellipseOutline,
  fitTransform,
  styleFor,
  type Viewport,
} from "./scene.js";
import {
  LAYER_ORDER,
  type AnchorRole,
  type CatalogEntry,
  type FamilyResponse,
  type LayerName,
  type OrbitResponse,
  type Point,
} from "./types.js";

const INVARIANT_SAMPLES = 16;

interface App {
  state: ViewState;
  catalog: CatalogEntry[];
  family: FamilyResponse | null;
  orbit: OrbitResponse | null;
  extremes: RunningExtremes;
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function showBanner(message: string | null): void {
  const banner = el<HTMLDivElement>("banner");
  banner.textContent = message ?? "";
  banner.style.display = message ? "block" : "none";
}

function renderScene(app: App): void {
  const canvas = el<HTMLCanvasElement>("scene");
  const ctx = canvas.getContext("2d");
  if (!ctx || !app.orbit || !app.family) {
    return;
  }
  const { a, b } = semiAxes(app.state);
  const view: Viewport = { width: canvas.width, height: canvas.height, margin: 0.3 };
  const billiard = ellipseOutline(a, b);
  const caustic = ellipseOutline(app.family.a_c, app.family.b_c);
  const sets: Point[][] = [billiard, caustic, app.orbit.vertices];
  for (const pts of Object.values(app.orbit.layers)) {
    sets.push(pts);
  }
  const tr = fitTransform(sets, view);

  ctx.clearRect(0, 0, canvas.width, canvas.height);
  drawPolygon(ctx, billiard, tr, styleFor("billiard").color, 2);
  drawPolygon(ctx, caustic, tr, styleFor("caustic").color, 1);
  drawPolygon(ctx, app.orbit.vertices, tr, styleFor("orbit").color, 2);
  for (const [key, pts] of Object.entries(app.orbit.layers)) {
    drawPolygon(ctx, pts, tr, styleFor(key).color);
  }
  const c = Math.sqrt(Math.max(0, a * a - b * b));
  const anchors: Record<AnchorRole, Point> = {
    O: [0, 0],
    f1: [c, 0],
    f2: [-c, 0],
  };
  drawMarker(ctx, anchors[app.state.anchor], tr, "#111827");
}

function renderLegend(app: App): void {
  const legend = el<HTMLDivElement>("legend");
  legend.innerHTML = "";
  for (const { key, color, label } of LAYER_STYLES) {
    const active =
      key === "billiard" ||
      key === "caustic" ||
      key === "orbit" ||
      app.state.layers.has(key as LayerName);
    const item = document.createElement("span");
    item.className = "legend-item" + (active ? "" : " inactive");
    item.style.borderLeft = `12px solid ${color}`;
    item.textContent = label;
    legend.appendChild(item);
  }
}

function renderPanel(rows: PanelRow[]): void {
  const tbody = el<HTMLTableSectionElement>("panel-body");
  tbody.innerHTML = "";
  for (const row of rows) {
    const tr = document.createElement("tr");
    tr.className = row.admissible ? "" : "greyed";
    const badge = row.admissible
      ? (row.badge ?? "") + (row.discrepancy ? " *" : "")
      : row.condition;
    const cells = [
      row.id,
      String(row.cluster),
      formatValue(row.value),
      formatValue(row.min),
      formatValue(row.max),
      badge,
    ];
    for (const text of cells) {
      const td = document.createElement("td");
      td.textContent = text;
      tr.appendChild(td);
    }
    tbody.appendChild(tr);
  }
}

async function refreshFamily(app: App, api: ApiClient): Promise<void> {
  const { a, b } = semiAxes(app.state);
  app.family = await api.family(a, b, app.state.n);
  el<HTMLSpanElement>("readout-J").textContent = app.family.J.toFixed(9);
  el<HTMLSpanElement>("readout-L").textContent = app.family.L.toFixed(9);
}

function bootstrap(): void {
  const api = new ApiClient("");
  const app: App = {
    state: defaultState(),
    catalog: [],
    family: null,
    orbit: null,
    extremes: new RunningExtremes(),
  };

  const fetchOrbit = new LatestOnly((t: number) => {
    const { a, b } = semiAxes(app.state);
    return api.orbit(a, b, app.state.n, t, layersParam(app.state));
  });
  const fetchInvariants = new LatestOnly(() => {
    const { a, b } = semiAxes(app.state);
    return api.invariants(a, b, app.state.n, INVARIANT_SAMPLES, app.state.anchor);
  });

  const redraw = async (): Promise<void> => {
    try {
      const orbit = await fetchOrbit.call(app.state.t);
      if (orbit) {
        app.orbit = orbit;
        renderScene(app);
        showBanner(null);
      }
    } catch (err) {
      showBanner(err instanceof Error ? err.message : String(err));
    }
  };

  const refreshPanel = async (): Promise<void> => {
    try {
      const inv = await fetchInvariants.call();
      if (inv) {
        const rows = buildPanel(
          app.catalog,
          inv.invariants,
          app.state.n,
          app.state.clusterFilter,
          app.extremes,
        );
        renderPanel(rows);
        showBanner(null);
      }
    } catch (err) {
      showBanner(err instanceof Error ? err.message : String(err));
    }
  };

  const onConfigChange = rateLimited(async () => {
    app.extremes.reset();
    try {
      await refreshFamily(app, api);
      await redraw();
      await refreshPanel();
      renderLegend(app);
    } catch (err) {
      showBanner(err instanceof Error ? err.message : String(err));
    }
  }, 100);

  const tSlider = el<HTMLInputElement>("t-slider");
  const onScrub = rateLimited(async () => {
    app.state = setT(app.state, Number(tSlider.value));
    await redraw();
    await refreshPanel();
  }, 50);
  tSlider.addEventListener("input", onScrub);

  const ratio = el<HTMLInputElement>("ratio-slider");
  ratio.addEventListener("input", () => {
    app.state = setAspectRatio(app.state, Number(ratio.value));
    onConfigChange();
  });

  const period = el<HTMLSelectElement>("n-select");
  period.addEventListener("change", () => {
    app.state = setPeriod(app.state, Number(period.value));
    onConfigChange();
  });

  const anchor = el<HTMLSelectElement>("anchor-select");
  anchor.addEventListener("change", () => {
    app.state = setAnchor(app.state, anchor.value as AnchorRole);
    onConfigChange();
  });

  const cluster = el<HTMLSelectElement>("cluster-select");
  cluster.addEventListener("change", () => {
    const v = cluster.value === "" ? null : Number(cluster.value);
    app.state = setClusterFilter(app.state, v);
    refreshPanel();
  });

  const layerBox = el<HTMLDivElement>("layer-toggles");
  for (const layer of LAYER_ORDER) {
    if (layer === "orbit") {
      continue; // always drawn
    }
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.addEventListener("change", () => {
      app.state = toggleLayer(app.state, layer);
      onConfigChange();
    });
    label.appendChild(box);
    label.appendChild(document.createTextNode(layer));
    layerBox.appendChild(label);
  }

  const animator = new Animator((t) => {
    app.state = setT(app.state, t);
    tSlider.value = String(t);
    void redraw();
  });
  el<HTMLButtonElement>("play").addEventListener("click", () => {
    if (animator.isRunning) {
      animator.stop();
    } else {
      animator.seek(app.state.t);
      animator.start((cb) => requestAnimationFrame(cb));
    }
  });

  api
    .catalog()
    .then((catalog) => {
      app.catalog = catalog;
      onConfigChange();
    })
    .catch((err) => showBanner(err instanceof Error ? err.message : String(err)));
}

if (typeof document !== "undefined" && document.getElementById("scene")) {
  bootstrap();
}

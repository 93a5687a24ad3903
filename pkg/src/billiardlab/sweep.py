"""Family sweeps, constancy classification, and report generation.

A SweepPlan names billiard configurations, a t-sample count, anchor
roles, and tolerances; run_catalog evaluates every admissible catalog
variant over the plan and classifies each series as invariant or not.
Reports are deterministic: the same plan yields byte-identical JSON.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .catalog import (
    AnchorPoint,
    EvaluationContext,
    InvariantVariant,
    SkipSample,
    evaluate,
    list_variants,
    make_anchor,
)
from .geometry import DegenerateGeometryError, internal_angles, signed_area
from .orbit import BilliardConfig, OrbitFamily, SolverError, build_family, orbit_at

__all__ = [
    "SweepPlan",
    "InvariantReport",
    "HarnessIntegrityError",
    "sweep_quantity",
    "classify",
    "run_catalog",
    "negative_control",
    "report_document",
    "save_report",
    "write_series_csv",
    "plan_run_id",
]

MAX_SKIP_FRACTION = 0.10


class HarnessIntegrityError(RuntimeError):
    """A known non-invariant probe was classified invariant."""


@dataclass(frozen=True)
class SweepPlan:
    configs: tuple[BilliardConfig, ...]
    t_samples: int = 128
    anchors: tuple[str, ...] = ("O", "f1", "f2")
    tol_rel: float = 1e-8
    tol_abs: float = 1e-10
    t_offset: float = 1e-3

    def __post_init__(self):
        if self.t_samples < 8:
            raise ValueError("t_samples must be >= 8")
        if self.tol_rel <= 0 or self.tol_abs <= 0:
            raise ValueError("tolerances must be positive")

    def to_dict(self) -> dict:
        return {
            "configs": [
                {"a": c.a, "b": c.b, "n": c.n, "rotation_number": c.rotation_number}
                for c in self.configs
            ],
            "t_samples": self.t_samples,
            "anchors": list(self.anchors),
            "tol_rel": self.tol_rel,
            "tol_abs": self.tol_abs,
            "t_offset": self.t_offset,
        }

    def t_grid(self) -> np.ndarray:
        return self.t_offset + 2.0 * np.pi * np.arange(self.t_samples) / self.t_samples


def plan_run_id(plan: SweepPlan) -> str:
    canonical = json.dumps(plan.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


@dataclass
class InvariantReport:
    sub_id: str
    config: BilliardConfig
    anchor: Optional[str]
    series: list  # (t, value) pairs; value is float or list
    skipped: list  # (t, reason) pairs
    mean: Union[float, list, None]
    max_rel_dev: Optional[float]
    verdict: str  # invariant | not_invariant | degenerate
    closed_form_residual: Optional[float]
    mode: str = "acceptance"  # acceptance | diagnostics
    discrepancy: Optional[str] = None

    @property
    def n_skipped(self) -> int:
        return len(self.skipped)

    def to_dict(self) -> dict:
        return {
            "id": self.sub_id,
            "config": {"a": self.config.a, "b": self.config.b, "n": self.config.n},
            "anchor": self.anchor,
            "mean": self.mean,
            "max_rel_dev": self.max_rel_dev,
            "verdict": self.verdict,
            "closed_form_residual": self.closed_form_residual,
            "n_skipped": self.n_skipped,
            "mode": self.mode,
            "discrepancy": self.discrepancy,
        }


def classify(values: list, tol_rel: float = 1e-8, tol_abs: float = 1e-10) -> str:
    """Constancy verdict for a series of scalars or fixed-size vectors.

    Invariant iff max|v - mean| / max(|mean|, tol_abs/tol_rel) < tol_rel,
    applied component-wise for vector series (near-zero means fall back
    to the absolute scale tol_abs/tol_rel so exact zeros classify cleanly).
    """
    if not values:
        return "degenerate"
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    mean = arr.mean(axis=0)
    dev = np.abs(arr - mean).max(axis=0)
    ref = np.maximum(np.abs(mean), tol_abs / tol_rel)
    return "invariant" if bool(np.all(dev / ref < tol_rel)) else "not_invariant"


def _max_rel_dev(values: list, tol_rel: float, tol_abs: float) -> float:
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    mean = arr.mean(axis=0)
    dev = np.abs(arr - mean).max(axis=0)
    ref = np.maximum(np.abs(mean), tol_abs / tol_rel)
    return float(np.max(dev / ref))


def sweep_quantity(
    family: OrbitFamily,
    key: str,
    anchor: Optional[AnchorPoint],
    n: int,
    t_offset: float = 1e-3,
) -> tuple[list, list]:
    """Evaluate one invariant at n uniformly spaced family parameters.
    Returns (series, skipped) where series holds (t, value) pairs."""
    ts = t_offset + 2.0 * np.pi * np.arange(n) / n
    series, skipped = [], []
    for t in ts:
        try:
            sample = orbit_at(family, float(t))
            ctx = EvaluationContext(family, sample, anchor)
            series.append((float(t), evaluate(key, ctx)))
        except (SkipSample, SolverError, DegenerateGeometryError) as exc:
            skipped.append((float(t), str(exc)))
    if len(skipped) > MAX_SKIP_FRACTION * n:
        raise SolverError(
            f"{key}: {len(skipped)}/{n} samples degenerate; family unusable")
    return series, skipped


def _anchor_roles_for(variant: InvariantVariant, plan_anchors: tuple[str, ...]) -> list:
    rule = variant.anchor
    if rule == "none":
        return [None]
    if rule == "any":
        return [r for r in plan_anchors]
    if rule == "focus":
        return [r for r in plan_anchors if r in ("f1", "f2")]
    if rule == "f1":
        return [r for r in plan_anchors if r == "f1"]
    if rule == "O":
        return [r for r in plan_anchors if r == "O"]
    if rule == "O_or_focus":
        return [r for r in plan_anchors if r in ("O", "f1", "f2")]
    raise ValueError(f"unknown anchor rule {rule!r}")


class _ConfigWorkspace:
    """Samples and evaluation contexts for one configuration, shared by
    every variant so derived-polygon caches are computed once per t."""

    def __init__(self, family: OrbitFamily, ts: np.ndarray):
        self.family = family
        self.entries = []
        for t in ts:
            try:
                self.entries.append((float(t), orbit_at(family, float(t)), {}))
            except SolverError:
                self.entries.append((float(t), None, {}))

    def context(self, idx: int, role: Optional[str]) -> Optional[EvaluationContext]:
        t, sample, ctxs = self.entries[idx]
        if sample is None:
            return None
        if role not in ctxs:
            anchor = None if role is None else make_anchor(self.family, role)
            ctxs[role] = EvaluationContext(self.family, sample, anchor)
        return ctxs[role]


def _evaluate_cell(ws: _ConfigWorkspace, variant: InvariantVariant,
                   role: Optional[str], plan: SweepPlan, mode: str) -> InvariantReport:
    series, skipped = [], []
    for idx, (t, sample, _) in enumerate(ws.entries):
        if sample is None:
            skipped.append((t, "orbit construction failed"))
            continue
        ctx = ws.context(idx, role)
        try:
            value = evaluate(variant.sub_id, ctx)
        except SkipSample as exc:
            skipped.append((t, str(exc)))
            continue
        series.append((t, value.tolist() if isinstance(value, np.ndarray) else float(value)))

    config = ws.family.config
    if len(skipped) > MAX_SKIP_FRACTION * len(ws.entries) or not series:
        return InvariantReport(
            sub_id=variant.sub_id, config=config, anchor=role, series=series,
            skipped=skipped, mean=None, max_rel_dev=None, verdict="degenerate",
            closed_form_residual=None, mode=mode, discrepancy=variant.discrepancy)

    values = [v for _, v in series]
    verdict = classify(values, plan.tol_rel, plan.tol_abs)
    arr = np.asarray(values, dtype=float)
    mean = arr.mean(axis=0)
    residual = None
    if variant.closed_form is not None:
        cf = np.asarray(variant.closed_form(ws.family), dtype=float)
        residual = float(np.max(np.abs(mean - cf) / np.maximum(1.0, np.abs(cf))))
    return InvariantReport(
        sub_id=variant.sub_id, config=config, anchor=role, series=series,
        skipped=skipped,
        mean=mean.tolist() if mean.ndim else float(mean),
        max_rel_dev=_max_rel_dev(values, plan.tol_rel, plan.tol_abs),
        verdict=verdict, closed_form_residual=residual, mode=mode,
        discrepancy=variant.discrepancy)


def run_catalog(plan: SweepPlan, include_inadmissible: bool = False) -> list[InvariantReport]:
    """Evaluate every catalog variant over every plan configuration and
    admissible anchor. With include_inadmissible, rows whose "which N"
    excludes a configuration are also evaluated (diagnostics mode) to
    confirm non-constancy outside their stated domain."""
    reports: list[InvariantReport] = []
    ts = plan.t_grid()
    for config in plan.configs:
        family = build_family(config)
        ws = _ConfigWorkspace(family, ts)
        for variant in list_variants():
            admissible_n = _variant_n_ok(variant, config.n)
            if not admissible_n and not include_inadmissible:
                continue
            mode = "acceptance" if admissible_n else "diagnostics"
            for role in _anchor_roles_for(variant, plan.anchors):
                reports.append(_evaluate_cell(ws, variant, role, plan, mode))
    reports.sort(key=lambda r: (r.sub_id,
                                (r.config.n, r.config.a, r.config.b),
                                r.anchor or ""))
    return reports


def _variant_n_ok(variant: InvariantVariant, n: int) -> bool:
    from .catalog import _WHICH_N
    return _WHICH_N[variant.which_n](n)


# ---------------------------------------------------------------------------
# negative controls
# ---------------------------------------------------------------------------

_PROBES = {
    "orbit_area": lambda ctx: signed_area(ctx.sample.vertices),
    "first_internal_angle": lambda ctx: float(internal_angles(ctx.sample.vertices)[0]),
    "sum_d1_odd": lambda ctx: float(
        np.sum(np.linalg.norm(ctx.sample.vertices - ctx.focus(1), axis=1))),
}


def negative_control(plan: SweepPlan) -> dict:
    """Evaluate known non-invariant probes and demand they classify
    not_invariant; guards against a trivially-passing harness. Family
    variation shrinks rapidly with N, so plans for this check should use
    small N (<= 6) where probes vary well above tolerance."""
    results = {}
    failures = []
    ts = plan.t_grid()
    for config in plan.configs:
        family = build_family(config)
        for name, fn in _PROBES.items():
            if name == "sum_d1_odd" and config.n % 2 == 0:
                continue
            values = []
            for t in ts:
                sample = orbit_at(family, float(t))
                values.append(fn(EvaluationContext(family, sample, None)))
            verdict = classify(values, plan.tol_rel, plan.tol_abs)
            key = f"{name}@(a={config.a},b={config.b},n={config.n})"
            results[key] = verdict
            if verdict != "not_invariant":
                failures.append(key)
    if failures:
        raise HarnessIntegrityError(
            "non-invariant probes classified invariant: " + ", ".join(failures))
    return results


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------

SCHEMA_VERSION = 1


def report_document(plan: SweepPlan, reports: list[InvariantReport]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "run_id": plan_run_id(plan),
        "plan": plan.to_dict(),
        "reports": [r.to_dict() for r in reports],
    }


def save_report(path: str, plan: SweepPlan, reports: list[InvariantReport]) -> dict:
    doc = report_document(plan, reports)
    with open(path, "w") as fh:
        fh.write(json.dumps(doc, sort_keys=True, separators=(",", ":")))
        fh.write("\n")
    return doc


def write_series_csv(path: str, series: list) -> None:
    """Persist one (t, value) series; scalar series get a `t,value`
    header, 2-vector series `t,x,y`, longer vectors `t,v1,...,vk`."""
    if not series:
        raise ValueError("empty series")
    first = series[0][1]
    if np.ndim(first) == 0:
        header = "t,value"
        width = 1
    elif len(first) == 2:
        header = "t,x,y"
        width = 2
    else:
        width = len(first)
        header = "t," + ",".join(f"v{i+1}" for i in range(width))
    with open(path, "w") as fh:
        fh.write(header + "\n")
        for t, v in series:
            vals = [v] if np.ndim(v) == 0 else list(v)
            fh.write(",".join("%.17g" % x for x in [t] + vals) + "\n")

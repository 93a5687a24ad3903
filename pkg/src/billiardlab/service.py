"""Stateless HTTP JSON facade over the orbit engine and catalog.

All endpoints are GETs whose responses are pure functions of the query
string; invalid queries return 400 with a machine-readable reason and
solver failures 422.
"""

from __future__ import annotations

import json
from typing import Optional

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Response
from pydantic import BaseModel

from . import derived
from .catalog import (
    EvaluationContext,
    catalog_json,
    evaluate,
    list_variants,
    make_anchor,
    SkipSample,
)
from .orbit import BilliardConfig, OrbitFamily, SolverError, build_family, orbit_at
from .sweep import classify

__all__ = ["create_app", "app"]

LAYER_KINDS = {"outer", "inner", "pedal", "antipedal", "evolute",
               "inversive", "polar", "dual"}
ANCHORED_LAYERS = {"pedal", "antipedal", "inversive", "polar", "dual"}
ANCHOR_ROLES = {"O", "f1", "f2"}


class FamilyResponse(BaseModel):
    a_c: float
    b_c: float
    J: float
    L: float


class OrbitResponse(BaseModel):
    t: float
    closure_error: float
    vertices: list[list[float]]
    tangency_points: list[list[float]]
    layers: dict[str, list[list[float]]]


class InvariantSeries(BaseModel):
    id: str
    anchor: Optional[str]
    values: list[dict]
    mean: object
    verdict: str


class InvariantsResponse(BaseModel):
    a: float
    b: float
    n: int
    samples: int
    anchor: Optional[str]
    invariants: list[InvariantSeries]


def _config_or_400(a: float, b: float, n: int) -> BilliardConfig:
    try:
        return BilliardConfig(a=a, b=b, n=n)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _family_or_422(config: BilliardConfig) -> OrbitFamily:
    try:
        return build_family(config)
    except SolverError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


def _layer_vertices(family, sample, kind: str, role: Optional[str]) -> np.ndarray:
    E = family.config.billiard
    if kind == "outer":
        return derived.outer_polygon(sample, E)
    if kind == "inner":
        return derived.inner_polygon(sample)
    if kind == "evolute":
        return derived.evolute_polygon(sample.vertices)
    anchor = make_anchor(family, role)
    if kind == "pedal":
        return derived.pedal_polygon(sample.vertices, anchor.position)
    if kind == "antipedal":
        return derived.antipedal_polygon(sample.vertices, anchor.position)
    if kind == "inversive":
        return derived.inversive_polygon(sample.vertices, anchor.position)
    if kind == "polar":
        return derived.polar_polygon(sample, anchor.position)
    if kind == "dual":
        return derived.dual_polygon(sample, anchor.position)
    raise ValueError(f"unknown layer kind {kind!r}")


def _parse_layers(layers: str) -> list[tuple[str, Optional[str]]]:
    parsed = []
    for item in filter(None, (s.strip() for s in layers.split(","))):
        kind, _, role = item.partition(":")
        if kind not in LAYER_KINDS:
            raise ValueError(f"unknown layer {kind!r}")
        if kind in ANCHORED_LAYERS:
            role = role or "f1"
            if role not in ANCHOR_ROLES:
                raise ValueError(f"unknown layer anchor {role!r}")
            if kind in ("inversive", "polar", "dual") and role == "O":
                raise ValueError(f"layer {kind!r} requires a focus anchor")
            parsed.append((kind, role))
        else:
            if role:
                raise ValueError(f"layer {kind!r} takes no anchor")
            parsed.append((kind, None))
    return parsed


def create_app() -> FastAPI:
    app = FastAPI(title="billiardlab", version="0.1.0")

    @app.get("/api/family", response_model=FamilyResponse)
    def family(a: float, b: float, n: int):
        fam = _family_or_422(_config_or_400(a, b, n))
        return FamilyResponse(a_c=fam.caustic.a, b_c=fam.caustic.b, J=fam.J, L=fam.L)

    @app.get("/api/orbit", response_model=OrbitResponse)
    def orbit(a: float, b: float, n: int, t: float = 0.0,
              layers: str = Query(default="")):
        fam = _family_or_422(_config_or_400(a, b, n))
        try:
            wanted = _parse_layers(layers)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        try:
            sample = orbit_at(fam, t)
            layer_payload = {}
            for kind, role in wanted:
                name = kind if role is None else f"{kind}:{role}"
                layer_payload[name] = _layer_vertices(fam, sample, kind, role).tolist()
        except SolverError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return OrbitResponse(
            t=sample.t,
            closure_error=sample.closure_error,
            vertices=sample.vertices.tolist(),
            tangency_points=sample.tangency_points.tolist(),
            layers=layer_payload,
        )

    @app.get("/api/invariants", response_model=InvariantsResponse)
    def invariants(a: float, b: float, n: int, samples: int = 32,
                   anchor: Optional[str] = None):
        if samples < 2 or samples > 1024:
            raise HTTPException(status_code=400,
                                detail="samples must be in [2, 1024]")
        if anchor is not None and anchor not in ANCHOR_ROLES:
            raise HTTPException(status_code=400,
                                detail=f"unknown anchor role {anchor!r}")
        fam = _family_or_422(_config_or_400(a, b, n))
        anchor_point = make_anchor(fam, anchor) if anchor else None
        ts = 1e-3 + 2.0 * np.pi * np.arange(samples) / samples
        ctxs = []
        try:
            for t in ts:
                s = orbit_at(fam, float(t))
                ctxs.append((float(t), EvaluationContext(fam, s, anchor_point)))
        except SolverError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

        out = []
        for variant in list_variants():
            role = anchor if variant.anchor != "none" else None
            if not variant.applicable(n, role):
                continue
            rows, values = [], []
            for t, ctx in ctxs:
                try:
                    v = evaluate(variant.sub_id, ctx)
                except SkipSample:
                    continue
                v = v.tolist() if isinstance(v, np.ndarray) else float(v)
                rows.append({"t": t, "value": v})
                values.append(v)
            if not values:
                continue
            arr = np.asarray(values, dtype=float)
            mean = arr.mean(axis=0)
            out.append(InvariantSeries(
                id=variant.sub_id,
                anchor=role,
                values=rows,
                mean=mean.tolist() if mean.ndim else float(mean),
                verdict=classify(values),
            ))
        return InvariantsResponse(a=a, b=b, n=n, samples=samples,
                                  anchor=anchor, invariants=out)

    @app.get("/api/catalog")
    def catalog():
        return Response(content=catalog_json(), media_type="application/json")

    return app


app = create_app()

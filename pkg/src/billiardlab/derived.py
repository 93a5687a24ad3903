"""Polygons derived from an N-periodic orbit.

Outer (tangent-line) and inner (tangency-point) polygons, pedal and
antipedal polygons with respect to an arbitrary point, discrete evolutes,
focal circle inversions, ellipse inversions, and the polar/dual pair.
All constructions preserve the orbit's vertex ordering so signed areas
stay comparable across kinds.
"""

from __future__ import annotations

import numpy as np

from .geometry import (
    DegenerateGeometryError,
    Ellipse,
    foot_of_perpendicular,
    Line,
    invert_in_circle,
    invert_in_ellipse,
)
from .orbit import OrbitFamily, OrbitSample, orbit_at

__all__ = [
    "outer_polygon",
    "inner_polygon",
    "pedal_polygon",
    "antipedal_polygon",
    "evolute_polygon",
    "inversive_polygon",
    "polar_polygon",
    "dual_polygon",
    "ellipse_inverse_polygon",
    "outer_locus_foci",
]

_PARALLEL_TOL = 1e-12


def _intersect(p1: np.ndarray, d1: np.ndarray, p2: np.ndarray, d2: np.ndarray) -> np.ndarray:
    """Intersection of two lines in point-direction form."""
    den = d1[0] * d2[1] - d1[1] * d2[0]
    scale = max(np.abs(d1).max(), np.abs(d2).max())
    if abs(den) < _PARALLEL_TOL * scale * scale:
        raise DegenerateGeometryError("lines are parallel; vertex at infinity")
    dp = p2 - p1
    s = (dp[0] * d2[1] - dp[1] * d2[0]) / den
    return p1 + s * d1


def outer_polygon(sample: OrbitSample, E: Ellipse) -> np.ndarray:
    """Vertices at the intersections of billiard tangent lines at
    consecutive orbit vertices: P'_i = tangent(P_i) x tangent(P_{i+1})."""
    P = sample.vertices
    Q = np.roll(P, -1, axis=0)
    out = np.empty_like(P)
    for i in range(len(P)):
        # tangent at (x0, y0): x*x0/a^2 + y*y0/b^2 = 1
        M = np.array([
            [P[i, 0] / E.a**2, P[i, 1] / E.b**2],
            [Q[i, 0] / E.a**2, Q[i, 1] / E.b**2],
        ])
        if abs(np.linalg.det(M)) < _PARALLEL_TOL:
            raise DegenerateGeometryError("tangents at antipodal vertices are parallel")
        out[i] = np.linalg.solve(M, np.ones(2))
    return out


def inner_polygon(sample: OrbitSample) -> np.ndarray:
    """Caustic tangency points, one per orbit side."""
    return sample.tangency_points.copy()


def pedal_polygon(P: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Feet of perpendiculars from m onto the side lines of P
    (foot i lies on the line through P_i and P_{i+1})."""
    P = np.asarray(P, dtype=float)
    out = np.empty_like(P)
    Q = np.roll(P, -1, axis=0)
    for i in range(len(P)):
        out[i] = foot_of_perpendicular(m, Line.from_points(P[i], Q[i]))
    return out


def antipedal_polygon(P: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Intersections of consecutive rays through the P_i perpendicular to
    (P_i - m); vertex i pairs rays i and i+1. May be self-intersecting."""
    P = np.asarray(P, dtype=float)
    m = np.asarray(m, dtype=float)
    rel = P - m
    if np.any(np.linalg.norm(rel, axis=1) < 1e-300):
        raise DegenerateGeometryError("vertex coincides with the anchor point")
    dirs = np.column_stack([-rel[:, 1], rel[:, 0]])
    out = np.empty_like(P)
    for i in range(len(P)):
        j = (i + 1) % len(P)
        out[i] = _intersect(P[i], dirs[i], P[j], dirs[j])
    return out


def evolute_polygon(P: np.ndarray) -> np.ndarray:
    """Intersections of perpendicular bisectors of consecutive sides
    (vertex i pairs the bisectors of sides i and i+1)."""
    P = np.asarray(P, dtype=float)
    Q = np.roll(P, -1, axis=0)
    mids = 0.5 * (P + Q)
    edges = Q - P
    norms = np.linalg.norm(edges, axis=1)
    if np.any(norms < 1e-300):
        raise DegenerateGeometryError("zero-length side has no bisector")
    perp = np.column_stack([-edges[:, 1], edges[:, 0]])
    out = np.empty_like(P)
    for i in range(len(P)):
        j = (i + 1) % len(P)
        out[i] = _intersect(mids[i], perp[i], mids[j], perp[j])
    return out


def inversive_polygon(P: np.ndarray, focus: np.ndarray, radius: float = 1.0) -> np.ndarray:
    """Vertex-wise inversion in a circle of the given radius at a focus."""
    return invert_in_circle(np.asarray(P, dtype=float), focus, radius)


def polar_polygon(sample: OrbitSample, focus: np.ndarray, radius: float = 1.0) -> np.ndarray:
    """Antipedal of the focus-inversive polygon, anchored at the same focus."""
    return antipedal_polygon(inversive_polygon(sample.vertices, focus, radius), focus)


def dual_polygon(sample: OrbitSample, focus: np.ndarray, radius: float = 1.0) -> np.ndarray:
    """Inverse of the focal pedal polygon (dual of the orbit at the focus)."""
    return inversive_polygon(pedal_polygon(sample.vertices, focus), focus, radius)


def ellipse_inverse_polygon(P: np.ndarray, E: Ellipse) -> np.ndarray:
    """Vertex-wise chord-of-contact midpoints; for the outer polygon with
    respect to the billiard this yields the orbit side midpoints, and for
    the orbit with respect to the caustic the inner-polygon side midpoints."""
    return invert_in_ellipse(np.asarray(P, dtype=float), E)


def outer_locus_foci(
    family: OrbitFamily,
    n_samples: int = 32,
    residual_tol: float = 1e-6,
) -> tuple[np.ndarray, np.ndarray]:
    """Foci of the elliptic locus traced by the outer-polygon vertices.

    Fits p*x^2 + q*y^2 = 1 by total least squares over outer vertices from
    `n_samples` evenly spaced family parameters. The locus is concentric
    and axis-aligned with the billiard but not confocal; its foci lie on
    whichever axis is major. Returns (f1', f2') with f1' in the closed
    half-plane x >= 0 (or y >= 0 if the major axis is vertical).
    """
    cached = family._extras.get("outer_locus_foci")
    if cached is not None:
        return cached

    ts = 2.0 * np.pi * np.arange(n_samples) / n_samples + 1e-3
    pts = np.vstack([
        outer_polygon(orbit_at(family, t), family.config.billiard) for t in ts
    ])
    M = np.column_stack([pts[:, 0] ** 2, pts[:, 1] ** 2, np.ones(len(pts))])
    _, _, vt = np.linalg.svd(M, full_matrices=False)
    coef = vt[-1]
    if abs(coef[2]) < 1e-12:
        raise DegenerateGeometryError("outer-vertex locus fit is degenerate")
    p, q = -coef[0] / coef[2], -coef[1] / coef[2]
    if p <= 0 or q <= 0:
        raise DegenerateGeometryError("outer-vertex locus is not an ellipse")
    residual = float(np.max(np.abs(p * pts[:, 0] ** 2 + q * pts[:, 1] ** 2 - 1.0)))
    if residual > residual_tol:
        raise DegenerateGeometryError(
            f"outer-vertex locus is not elliptic (fit residual {residual:.3e})"
        )
    alpha2, beta2 = 1.0 / p, 1.0 / q
    if alpha2 >= beta2:
        c = float(np.sqrt(alpha2 - beta2))
        foci = (np.array([c, 0.0]), np.array([-c, 0.0]))
    else:
        c = float(np.sqrt(beta2 - alpha2))
        foci = (np.array([0.0, c]), np.array([0.0, -c]))
    family._extras["outer_locus_foci"] = foci
    return foci

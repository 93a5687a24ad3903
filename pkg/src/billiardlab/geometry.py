"""Planar geometric primitives: ellipses, lines, polygons, inversions.

Everything here is pure and stateless. Points are numpy arrays of shape
(2,), polygons are arrays of shape (N, 2) with cyclic vertex indexing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DegenerateGeometryError",
    "Ellipse",
    "Line",
    "ellipse_frame",
    "curvature",
    "signed_area",
    "area_centroid",
    "vertex_centroid",
    "internal_angles",
    "steiner_curvature_centroid",
    "invert_in_circle",
    "invert_in_ellipse",
    "foot_of_perpendicular",
    "perimeter",
    "side_lengths",
]

AREA_TOL = 1e-14
ON_ELLIPSE_RTOL = 1e-9


class DegenerateGeometryError(ValueError):
    """A construction hit a singular configuration (zero area, point at
    infinity, inversion center, ...)."""


@dataclass(frozen=True)
class Ellipse:
    """Axis-aligned ellipse centered at the origin with semi-axes a >= b > 0."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a >= self.b > 0):
            raise ValueError(f"require a >= b > 0, got a={self.a}, b={self.b}")

    @property
    def focal_distance(self) -> float:
        return float(np.sqrt(self.a**2 - self.b**2))

    @property
    def foci(self) -> tuple[np.ndarray, np.ndarray]:
        """(f1, f2) = ((+c, 0), (-c, 0))."""
        c = self.focal_distance
        return np.array([c, 0.0]), np.array([-c, 0.0])

    def point(self, t: float | np.ndarray) -> np.ndarray:
        return np.stack([self.a * np.cos(t), self.b * np.sin(t)], axis=-1)

    def implicit(self, p: np.ndarray) -> np.ndarray:
        """x^2/a^2 + y^2/b^2 - 1, vectorized over trailing point axis."""
        p = np.asarray(p, dtype=float)
        return p[..., 0] ** 2 / self.a**2 + p[..., 1] ** 2 / self.b**2 - 1.0

    def contains_on_boundary(self, p: np.ndarray, rtol: float = ON_ELLIPSE_RTOL) -> bool:
        return bool(np.all(np.abs(self.implicit(p)) < rtol))


@dataclass(frozen=True)
class Line:
    """Line through `point` with unit `direction`.

    The (u, v) normal form u*x + v*y = 1 cannot represent lines through
    the origin, so the point-direction pair is the canonical storage; the
    normal form is derived on demand when it exists.
    """

    point: np.ndarray
    direction: np.ndarray

    @classmethod
    def from_points(cls, p: np.ndarray, q: np.ndarray) -> "Line":
        d = np.asarray(q, dtype=float) - np.asarray(p, dtype=float)
        n = np.linalg.norm(d)
        if n == 0:
            raise DegenerateGeometryError("coincident points do not define a line")
        return cls(np.asarray(p, dtype=float), d / n)

    @classmethod
    def from_uv(cls, u: float, v: float) -> "Line":
        """Line u*x + v*y = 1."""
        n2 = u * u + v * v
        if n2 == 0:
            raise DegenerateGeometryError("(u, v) = (0, 0) is not a line")
        return cls(np.array([u, v]) / n2, np.array([-v, u]) / np.sqrt(n2))

    def uv(self) -> tuple[float, float] | None:
        """Normal-form coefficients, or None for a line through the origin."""
        n = np.array([-self.direction[1], self.direction[0]])
        c = float(n @ self.point)
        if abs(c) < 1e-15:
            return None
        return float(n[0] / c), float(n[1] / c)

    def contains(self, p: np.ndarray, tol: float = 1e-9) -> bool:
        d = np.asarray(p, dtype=float) - self.point
        return bool(abs(d[0] * self.direction[1] - d[1] * self.direction[0]) < tol)


def ellipse_frame(E: Ellipse, t: float) -> dict:
    """Point, outward unit normal, unit tangent, and tangent line at parameter t."""
    p = E.point(t)
    n = np.array([p[0] / E.a**2, p[1] / E.b**2])
    n /= np.linalg.norm(n)
    tang = np.array([-E.a * np.sin(t), E.b * np.cos(t)])
    tang /= np.linalg.norm(tang)
    return {
        "point": p,
        "unit_normal": n,
        "unit_tangent": tang,
        "tangent_line": Line.from_uv(p[0] / E.a**2, p[1] / E.b**2),
    }


def curvature(E: Ellipse, p: np.ndarray) -> float:
    """Curvature of the ellipse at a boundary point, via the gradient form
    (1/(a^2 b^2)) (x^2/a^4 + y^2/b^4)^(-3/2)."""
    if not E.contains_on_boundary(p):
        raise DegenerateGeometryError(
            f"point {p} is not on the ellipse (residual {E.implicit(p):.3e})"
        )
    x, y = float(p[0]), float(p[1])
    g = x * x / E.a**4 + y * y / E.b**4
    return g ** (-1.5) / (E.a**2 * E.b**2)


def signed_area(P: np.ndarray) -> float:
    """Shoelace signed area; positive for counterclockwise simple polygons."""
    P = np.asarray(P, dtype=float)
    x, y = P[:, 0], P[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def perimeter(P: np.ndarray) -> float:
    return float(np.sum(side_lengths(P)))


def side_lengths(P: np.ndarray) -> np.ndarray:
    P = np.asarray(P, dtype=float)
    return np.linalg.norm(np.roll(P, -1, axis=0) - P, axis=1)


def area_centroid(P: np.ndarray) -> np.ndarray:
    """Centroid of the enclosed (signed) area."""
    P = np.asarray(P, dtype=float)
    S = signed_area(P)
    if abs(S) < AREA_TOL:
        raise DegenerateGeometryError("polygon area too small for an area centroid")
    Q = np.roll(P, -1, axis=0)
    cross = P[:, 0] * Q[:, 1] - Q[:, 0] * P[:, 1]
    return (cross[:, None] * (P + Q)).sum(axis=0) / (6.0 * S)


def vertex_centroid(P: np.ndarray) -> np.ndarray:
    return np.asarray(P, dtype=float).mean(axis=0)


def internal_angles(P: np.ndarray) -> np.ndarray:
    """Unsigned angle in (0, pi] at each vertex between the incident edges.

    Uses atan2 of |cross| and dot for robustness near 0 and pi.
    """
    P = np.asarray(P, dtype=float)
    e1 = np.roll(P, 1, axis=0) - P
    e2 = np.roll(P, -1, axis=0) - P
    n1 = np.linalg.norm(e1, axis=1)
    n2 = np.linalg.norm(e2, axis=1)
    if np.any(n1 < 1e-300) or np.any(n2 < 1e-300):
        raise DegenerateGeometryError("zero-length edge")
    cross = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
    dot = np.sum(e1 * e2, axis=1)
    return np.arctan2(np.abs(cross), dot)


def steiner_curvature_centroid(P: np.ndarray) -> np.ndarray:
    """sin(2*theta)-weighted vertex average; for triangles this is the
    circumcenter."""
    P = np.asarray(P, dtype=float)
    rho = np.sin(2.0 * internal_angles(P))
    s = rho.sum()
    if abs(s) < 1e-12:
        raise DegenerateGeometryError("sum of sin(2*theta) weights vanishes")
    return (rho[:, None] * P).sum(axis=0) / s


def invert_in_circle(p: np.ndarray, center: np.ndarray, radius: float = 1.0) -> np.ndarray:
    """Circle inversion; works vectorized on (..., 2) arrays of points."""
    p = np.asarray(p, dtype=float)
    center = np.asarray(center, dtype=float)
    d = p - center
    r2 = np.sum(d * d, axis=-1, keepdims=True)
    if np.any(r2 == 0):
        raise DegenerateGeometryError("cannot invert the inversion center")
    return center + radius**2 * d / r2


def invert_in_ellipse(p: np.ndarray, E: Ellipse) -> np.ndarray:
    """Map an exterior point to the midpoint of its chord of contact.

    The polar line of p=(x0,y0) is x*x0/a^2 + y*y0/b^2 = 1; the image is
    the midpoint of its intersection with the ellipse. A boundary point is
    a fixed point.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim > 1:
        return np.array([invert_in_ellipse(q, E) for q in p])
    res = float(E.implicit(p))
    if res < -ON_ELLIPSE_RTOL:
        raise DegenerateGeometryError("point is inside the ellipse")
    u, v = p[0] / E.a**2, p[1] / E.b**2
    # intersect u x + v y = 1 with the ellipse: rho cos(t - psi) = 1
    au, bv = E.a * u, E.b * v
    rho = float(np.hypot(au, bv))
    psi = float(np.arctan2(bv, au))
    dt = float(np.arccos(min(1.0, 1.0 / rho)))
    return 0.5 * (E.point(psi + dt) + E.point(psi - dt))


def foot_of_perpendicular(m: np.ndarray, L: Line) -> np.ndarray:
    """Orthogonal projection of m onto the line."""
    m = np.asarray(m, dtype=float)
    return L.point + float((m - L.point) @ L.direction) * L.direction

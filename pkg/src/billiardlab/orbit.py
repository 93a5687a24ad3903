"""N-periodic orbit families in the elliptic billiard.

Two independent routes to the confocal caustic are provided: a damped
Gauss-Newton solve of the vertex bisection error (`solve_seed_orbit`) and
scalar bisection on the closure defect of the tangent-line iteration
(`caustic_by_closure`). `build_family` uses the first and the acceptance
suite cross-checks both.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .geometry import Ellipse, perimeter

__all__ = [
    "BilliardConfig",
    "OrbitFamily",
    "OrbitSample",
    "SolverError",
    "caustic_from_segment",
    "solve_seed_orbit",
    "caustic_by_closure",
    "build_family",
    "orbit_at",
    "clear_family_cache",
]


class SolverError(RuntimeError):
    """Orbit solve or caustic search failed to converge."""


@dataclass(frozen=True)
class BilliardConfig:
    a: float
    b: float
    n: int
    rotation_number: int = 1

    def __post_init__(self):
        if not (self.a > self.b > 0):
            raise ValueError(f"require a > b > 0, got a={self.a}, b={self.b}")
        if self.n < 3:
            raise ValueError(f"require N >= 3, got {self.n}")
        if not (1 <= self.rotation_number < self.n / 2):
            raise ValueError(
                f"rotation number must be in [1, N/2), got {self.rotation_number}"
            )

    @property
    def billiard(self) -> Ellipse:
        return Ellipse(self.a, self.b)


@dataclass(frozen=True)
class OrbitFamily:
    config: BilliardConfig
    caustic: Ellipse
    L: float
    J: float
    # lazily populated caches shared by all samples of this family
    _extras: dict = field(default_factory=dict, repr=False, compare=False)


@dataclass(frozen=True)
class OrbitSample:
    t: float
    vertices: np.ndarray        # (N, 2) billiard bounce points
    tangency_points: np.ndarray  # (N, 2) caustic contacts, one per side
    closure_error: float


def caustic_from_segment(E: Ellipse, p1: np.ndarray, p2: np.ndarray) -> Ellipse:
    """The unique confocal ellipse tangent to the line through p1, p2.

    With the line as u x + v y = 1 the confocal parameter is
    lambda = (a^2 u^2 + b^2 v^2 - 1) / (u^2 + v^2), valid for
    0 < lambda < b^2 (lines through a focus touch a confocal hyperbola
    instead and are rejected).
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    M = np.array([p1, p2])
    if abs(np.linalg.det(M)) < 1e-14 * max(1.0, np.abs(M).max() ** 2):
        raise ValueError("segment line passes through the origin or points coincide")
    u, v = np.linalg.solve(M, np.ones(2))
    lam = (E.a**2 * u**2 + E.b**2 * v**2 - 1.0) / (u**2 + v**2)
    if not (0.0 < lam < E.b**2):
        raise ValueError(
            f"no confocal ellipse is tangent to this segment (lambda={lam:.6g})"
        )
    return Ellipse(float(np.sqrt(E.a**2 - lam)), float(np.sqrt(E.b**2 - lam)))


# ---------------------------------------------------------------------------
# seed orbit least squares
# ---------------------------------------------------------------------------

def _reduced_dim(n: int) -> int:
    return n // 2 if n % 2 == 1 else n // 4


def _expand_angles(free: np.ndarray, n: int) -> np.ndarray:
    """Full eccentric-angle vector from the symmetry-reduced parameters.

    P1 is pinned at t=0, i.e. (a, 0). Odd N orbits are mirror-symmetric
    about the x-axis; even N orbits about both axes, which fixes the
    remaining upper-half angles as pi minus their mirror partners.
    """
    t = np.zeros(n)
    if n % 2 == 1:
        h = (n - 1) // 2
        t[1:1 + h] = free
        t[1 + h:] = 2.0 * np.pi - free[::-1]
    else:
        half = n // 2
        m = len(free)
        t[1:1 + m] = free
        for i in range(m + 2, half + 2):  # 1-based vertex index
            t[i - 1] = np.pi - t[half + 2 - i - 1]
        for i in range(2, half + 1):
            t[n + 2 - i - 1] = 2.0 * np.pi - t[i - 1]
    return t


def _bisection_residuals(t: np.ndarray, a: float, b: float) -> np.ndarray:
    """Cross product of the ellipse normal with the unit side bisector at
    each vertex; all zero exactly for a closed billiard trajectory."""
    P = np.column_stack([a * np.cos(t), b * np.sin(t)])
    e1 = np.roll(P, 1, axis=0) - P
    e2 = np.roll(P, -1, axis=0) - P
    e1 /= np.linalg.norm(e1, axis=1, keepdims=True)
    e2 /= np.linalg.norm(e2, axis=1, keepdims=True)
    bis = e1 + e2
    bis /= np.linalg.norm(bis, axis=1, keepdims=True)
    nrm = np.column_stack([P[:, 0] / a**2, P[:, 1] / b**2])
    nrm /= np.linalg.norm(nrm, axis=1, keepdims=True)
    return nrm[:, 0] * bis[:, 1] - nrm[:, 1] * bis[:, 0]


_MAX_STEP = 0.25  # radians; keeps damped Gauss-Newton inside the basin


def _gauss_newton(a: float, b: float, n: int, free: np.ndarray,
                  tol: float, max_iter: int) -> tuple[np.ndarray, float]:
    m = len(free)

    def cost(f):
        r = _bisection_residuals(_expand_angles(f, n), a, b)
        return r, float(r @ r)

    lam = 1e-8
    r, E = cost(free)
    for _ in range(max_iter):
        if E < tol:
            break
        J = np.empty((n, m))
        h = 1e-7
        for k in range(m):
            fp = free.copy()
            fp[k] += h
            J[:, k] = (cost(fp)[0] - r) / h
        g = J.T @ r
        step = np.linalg.solve(J.T @ J + lam * np.eye(m), g)
        biggest = np.max(np.abs(step))
        if biggest > _MAX_STEP:
            step *= _MAX_STEP / biggest
        r_new, E_new = cost(free - step)
        if np.isfinite(E_new) and E_new < E:
            free = free - step
            r, E = r_new, E_new
            lam = max(lam * 0.3, 1e-12)
        else:
            lam *= 10.0
        if E < tol and np.max(np.abs(step)) < 1e-13:
            break
    return free, E


def solve_seed_orbit(
    config: BilliardConfig,
    tol: float = 1e-28,
    max_iter: int = 500,
) -> np.ndarray:
    """Solve the seed N-periodic with P1 = (a, 0) by damped Gauss-Newton
    over the symmetry-reduced angle vector. Returns the (N, 2) vertices.

    The regular-polygon start is already close for rotation number 1; for
    higher rotation numbers it can sit outside the basin, in which case the
    solve is restarted as a continuation from a near-circular billiard
    (where the regular star polygon is essentially exact) down to the
    requested aspect ratio."""
    a, b, n = config.a, config.b, config.n
    m = _reduced_dim(n)
    t0 = 2.0 * np.pi * config.rotation_number * np.arange(n) / n
    free0 = t0[1:1 + m].copy()

    free, E = _gauss_newton(a, b, n, free0, tol, max_iter)
    if E >= max(tol, 1e-22):
        free = free0.copy()
        for bk in np.geomspace(0.995 * a, b, 25):
            free, E = _gauss_newton(a, float(bk), n, free, tol, max_iter)
    if E >= max(tol, 1e-22):
        raise SolverError(f"seed orbit did not converge: E={E:.3e}")
    t = _expand_angles(free, n)
    return np.column_stack([a * np.cos(t), b * np.sin(t)])


# ---------------------------------------------------------------------------
# tangent-line iteration and the closure-based caustic oracle
# ---------------------------------------------------------------------------

def _tangent_step(E: Ellipse, caustic: Ellipse, p: np.ndarray):
    """One step of the billiard map: from a billiard point p, take the
    forward (counterclockwise) tangent to the caustic and return the next
    billiard vertex, the tangency point, and the new eccentric angle."""
    ac, bc = caustic.a, caustic.b
    R = float(np.hypot(p[0] / ac, p[1] / bc))
    phi = float(np.arctan2(p[1] / bc, p[0] / ac))
    s = phi + np.arccos(min(1.0, 1.0 / R))
    u, v = np.cos(s) / ac, np.sin(s) / bc
    rho = float(np.hypot(E.a * u, E.b * v))
    psi = float(np.arctan2(E.b * v, E.a * u))
    tau = psi + np.arccos(min(1.0, 1.0 / rho))
    return E.point(tau), np.array([ac * ac * u, bc * bc * v]), tau


def _winding(E: Ellipse, caustic: Ellipse, n: int, t0: float = 0.0) -> float:
    """Total eccentric-angle advance of n tangent steps, in turns * 2pi."""
    p = E.point(t0)
    prev = t0
    total = 0.0
    for _ in range(n):
        p, _, tau = _tangent_step(E, caustic, p)
        total += (tau - prev) % (2.0 * np.pi)
        prev = tau
    return total


def caustic_by_closure(config: BilliardConfig, iters: int = 200) -> Ellipse:
    """Find the caustic by bisecting the signed closure defect of the
    tangent-line iteration started at (a, 0).

    The total angular advance of N steps decreases monotonically from
    ~N*pi (caustic collapsed to the focal segment) to 0 (caustic touching
    the billiard), so the root with advance 2*pi*rotation is bracketed in
    (sqrt(a^2-b^2), a).
    """
    E = config.billiard
    c = E.focal_distance
    target = 2.0 * np.pi * config.rotation_number

    def make(ac):
        return Ellipse(ac, float(np.sqrt(ac * ac - c * c)))

    lo = c * (1.0 + 1e-12) if c > 0 else 1e-12
    hi = config.a * (1.0 - 1e-14)
    f_lo = _winding(E, make(lo), config.n) - target
    f_hi = _winding(E, make(hi), config.n) - target
    if np.sign(f_lo) == np.sign(f_hi):
        raise SolverError(
            f"no caustic with rotation number {config.rotation_number} for N={config.n}"
        )
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        f_mid = _winding(E, make(mid), config.n) - target
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return make(0.5 * (lo + hi))


# ---------------------------------------------------------------------------
# family construction
# ---------------------------------------------------------------------------

def joachimsthal_products(E: Ellipse, P: np.ndarray) -> np.ndarray:
    """<A x, v> for every vertex, with v the unit incoming direction."""
    V = P - np.roll(P, 1, axis=0)
    V /= np.linalg.norm(V, axis=1, keepdims=True)
    Ax = np.column_stack([P[:, 0] / E.a**2, P[:, 1] / E.b**2])
    return np.sum(Ax * V, axis=1)


_FAMILY_CACHE: dict[tuple, OrbitFamily] = {}
_FAMILY_LOCK = threading.Lock()


def clear_family_cache() -> None:
    with _FAMILY_LOCK:
        _FAMILY_CACHE.clear()


def build_family(config: BilliardConfig, j_check_tol: float = 1e-8) -> OrbitFamily:
    """Solve the seed orbit, derive caustic / perimeter / Joachimsthal
    constant, and cross-check J against <A x, v> on every seed segment.
    Families are memoized by config."""
    key = (config.a, config.b, config.n, config.rotation_number)
    with _FAMILY_LOCK:
        cached = _FAMILY_CACHE.get(key)
    if cached is not None:
        return cached

    E = config.billiard
    seed = solve_seed_orbit(config)
    caustic = caustic_from_segment(E, seed[0], seed[1])
    L = perimeter(seed)
    J = float(np.sqrt(config.a**2 - caustic.a**2) / (config.a * config.b))
    jp = joachimsthal_products(E, seed)
    if np.max(np.abs(jp - J)) > j_check_tol:
        raise SolverError(
            f"Joachimsthal cross-check failed: axis form {J}, segment form {jp}"
        )
    family = OrbitFamily(config=config, caustic=caustic, L=L, J=J)
    with _FAMILY_LOCK:
        _FAMILY_CACHE.setdefault(key, family)
    return family


def orbit_at(family: OrbitFamily, t: float, closure_tol: float = 1e-9) -> OrbitSample:
    """Family member with P1 = (a cos t, b sin t), built by N tangent steps."""
    E = family.config.billiard
    n = family.config.n
    p = E.point(t)
    first = p
    vertices = [p]
    contacts = []
    for _ in range(n):
        p, contact, _ = _tangent_step(E, family.caustic, p)
        vertices.append(p)
        contacts.append(contact)
    closure = float(np.linalg.norm(vertices[-1] - first))
    if closure >= closure_tol:
        raise SolverError(f"tangent iteration did not close: |P_N+1 - P_1| = {closure:.3e}")
    return OrbitSample(
        t=float(t),
        vertices=np.array(vertices[:-1]),
        tangency_points=np.array(contacts),
        closure_error=closure,
    )

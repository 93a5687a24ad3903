"""Registry of the 82 cataloged invariants (k101-k908).

Each catalog id holds one or two concrete variants (e.g. k202a / k202b)
differing in applicability or closed form. Variants carry an evaluator
over an EvaluationContext, a "which N" predicate, an anchor-role rule,
and an optional closed form in the family constants (a, b, a'', b'', N,
L, J).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from . import derived
from .geometry import (
    DegenerateGeometryError,
    area_centroid,
    internal_angles,
    invert_in_circle,
    perimeter,
    side_lengths,
    signed_area,
    steiner_curvature_centroid,
    vertex_centroid,
)
from .orbit import OrbitFamily, OrbitSample

__all__ = [
    "AnchorPoint",
    "EvaluationContext",
    "InvariantSpec",
    "InvariantVariant",
    "SkipSample",
    "list_invariants",
    "list_variants",
    "lookup",
    "applicability",
    "evaluate",
    "closed_form_value",
    "catalog_json",
    "make_anchor",
]

Value = Union[float, np.ndarray]


class SkipSample(Exception):
    """The expression is degenerate at this family parameter; the sweep
    records a skip instead of a value."""


@dataclass(frozen=True)
class AnchorPoint:
    role: str  # O | f1 | f2 | f1_prime | f2_prime | arbitrary
    position: np.ndarray


def make_anchor(family: OrbitFamily, role: str, position=None) -> AnchorPoint:
    """Anchor point from a role name; `position` only for role 'arbitrary'."""
    E = family.config.billiard
    if role == "O":
        return AnchorPoint("O", np.zeros(2))
    if role == "f1":
        return AnchorPoint("f1", E.foci[0])
    if role == "f2":
        return AnchorPoint("f2", E.foci[1])
    if role in ("f1_prime", "f2_prime"):
        fp1, fp2 = derived.outer_locus_foci(family)
        return AnchorPoint(role, fp1 if role == "f1_prime" else fp2)
    if role == "arbitrary":
        if position is None:
            raise ValueError("arbitrary anchor requires a position")
        return AnchorPoint("arbitrary", np.asarray(position, dtype=float))
    raise ValueError(f"unknown anchor role {role!r}")


# ---------------------------------------------------------------------------
# evaluation context
# ---------------------------------------------------------------------------

class EvaluationContext:
    """Lazy cache of every polygon and per-vertex quantity the catalog
    expressions reference, for one (family, sample, anchor) triple."""

    def __init__(self, family: OrbitFamily, sample: OrbitSample,
                 anchor: Optional[AnchorPoint] = None):
        self.family = family
        self.sample = sample
        self.anchor = anchor
        self._cache: dict = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # --- anchors -----------------------------------------------------------
    @property
    def m(self) -> np.ndarray:
        if self.anchor is None:
            raise ValueError("expression requires an anchor point M")
        return self.anchor.position

    def focus(self, j: int) -> np.ndarray:
        return self.family.config.billiard.foci[j - 1]

    @property
    def j(self) -> int:
        """Focus index selected by the anchor (1 for f1, 2 for f2)."""
        if self.anchor is None or self.anchor.role not in ("f1", "f2"):
            raise ValueError("expression requires a focus anchor")
        return 1 if self.anchor.role == "f1" else 2

    # --- base polygons -----------------------------------------------------
    def poly(self, name: str) -> np.ndarray:
        def build():
            if name == "orbit":
                return self.sample.vertices
            if name == "outer":
                return derived.outer_polygon(self.sample, self.family.config.billiard)
            if name == "inner":
                return derived.inner_polygon(self.sample)
            raise KeyError(name)
        return self._get(("poly", name), build)

    def area(self, name: str) -> float:
        return self._get(("area", name), lambda: signed_area(self.poly(name)))

    def angles(self, name: str) -> np.ndarray:
        return self._get(("angles", name), lambda: internal_angles(self.poly(name)))

    # --- anchored constructions --------------------------------------------
    def _point(self, key: str) -> np.ndarray:
        if key == "m":
            return self.m
        if key in ("f1", "f2"):
            return self.focus(int(key[1]))
        raise KeyError(key)

    def pedal(self, base: str, key: str) -> np.ndarray:
        if key == "K":
            return self._get(("pedalK", base),
                             lambda: derived.pedal_polygon(self.poly(base), self.steiner(base)))
        return self._get(("pedal", base, key),
                         lambda: derived.pedal_polygon(self.poly(base), self._point(key)))

    def antipedal(self, base: str, key: str) -> np.ndarray:
        return self._get(("antipedal", base, key),
                         lambda: derived.antipedal_polygon(self.poly(base), self._point(key)))

    def pedal_area(self, base: str, key: str) -> float:
        return self._get(("pedal_area", base, key), lambda: signed_area(self.pedal(base, key)))

    def antipedal_area(self, base: str, key: str) -> float:
        return self._get(("antipedal_area", base, key),
                         lambda: signed_area(self.antipedal(base, key)))

    def steiner(self, base: str) -> np.ndarray:
        return self._get(("steiner", base),
                         lambda: steiner_curvature_centroid(self.poly(base)))

    def evolute_area(self, base: str) -> float:
        return self._get(("evolute_area", base),
                         lambda: signed_area(derived.evolute_polygon(self.poly(base))))

    # --- inversive constructions -------------------------------------------
    def inversive(self, base: str, j: int) -> np.ndarray:
        return self._get(("inversive", base, j),
                         lambda: derived.inversive_polygon(self.poly(base), self.focus(j)))

    def inversive_area(self, base: str, j: int) -> float:
        return self._get(("inversive_area", base, j),
                         lambda: signed_area(self.inversive(base, j)))

    def polar(self, j: int) -> np.ndarray:
        return self._get(("polar", j),
                         lambda: derived.polar_polygon(self.sample, self.focus(j)))

    def dual(self, j: int) -> np.ndarray:
        return self._get(("dual", j),
                         lambda: derived.dual_polygon(self.sample, self.focus(j)))

    def dual_of_outer(self, j: int) -> np.ndarray:
        """Dual of the outer polygon at focus j: inverse of its focal pedal."""
        return self._get(("dual_outer", j),
                         lambda: invert_in_circle(self.pedal("outer", f"f{j}"), self.focus(j)))

    def pedal_of_inversive(self, j: int) -> np.ndarray:
        return self._get(("pedal_inv", j),
                         lambda: derived.pedal_polygon(self.inversive("orbit", j), self.focus(j)))

    def ellipse_inverse_area(self, which: str) -> float:
        def build():
            if which == "orbit_wrt_caustic":
                return signed_area(derived.ellipse_inverse_polygon(
                    self.poly("orbit"), self.family.caustic))
            if which == "outer_wrt_billiard":
                return signed_area(derived.ellipse_inverse_polygon(
                    self.poly("outer"), self.family.config.billiard))
            raise KeyError(which)
        return self._get(("ellipse_inverse_area", which), build)

    def locus_inversive_area(self, j: int) -> float:
        """Area of the outer polygon inverted at the outer-locus focus f'_j."""
        def build():
            fp = derived.outer_locus_foci(self.family)[j - 1]
            return signed_area(invert_in_circle(self.poly("outer"), fp))
        return self._get(("locus_inversive_area", j), build)

    # --- per-vertex scalars --------------------------------------------------
    def d(self, j: int) -> np.ndarray:
        return self._get(("d", j),
                         lambda: np.linalg.norm(self.poly("orbit") - self.focus(j), axis=1))

    def l_r(self) -> tuple[np.ndarray, np.ndarray]:
        def build():
            P = self.poly("orbit")
            Pc = self.sample.tangency_points
            l = np.linalg.norm(Pc - P, axis=1)
            r = np.linalg.norm(np.roll(P, -1, axis=0) - Pc, axis=1)
            return l, r
        return self._get(("l_r",), build)

    def kappa(self) -> np.ndarray:
        def build():
            E = self.family.config.billiard
            P = self.poly("orbit")
            g = P[:, 0] ** 2 / E.a**4 + P[:, 1] ** 2 / E.b**4
            return g ** (-1.5) / (E.a**2 * E.b**2)
        return self._get(("kappa",), build)

    def alpha(self, j: int) -> np.ndarray:
        """Angles P_i f_j P_{i+1} subtended at focus j."""
        def build():
            f = self.focus(j)
            u = self.poly("orbit") - f
            v = np.roll(u, -1, axis=0)
            nu = np.linalg.norm(u, axis=1)
            nv = np.linalg.norm(v, axis=1)
            if np.any(nu < 1e-300) or np.any(nv < 1e-300):
                raise DegenerateGeometryError("orbit vertex at the focus")
            c = np.sum(u * v, axis=1) / (nu * nv)
            return np.arccos(np.clip(c, -1.0, 1.0))
        return self._get(("alpha", j), build)

    def q(self, j: int) -> np.ndarray:
        """Distances from focus j to the orbit's focal pedal feet."""
        return self._get(("q", j), lambda: np.linalg.norm(
            self.pedal("orbit", f"f{j}") - self.focus(j), axis=1))

    def q_star(self, j: int) -> np.ndarray:
        """Distances from focus j to the orbit's focal antipedal vertices."""
        return self._get(("q_star", j), lambda: np.linalg.norm(
            self.antipedal("orbit", f"f{j}") - self.focus(j), axis=1))

    def cos_phi(self, base: str) -> np.ndarray:
        """Cosines of the angles between consecutive pedal spokes Q_i - M."""
        def build():
            spokes = self.pedal(base, "m") - self.m
            norms = np.linalg.norm(spokes, axis=1)
            if np.any(norms < 1e-12):
                raise DegenerateGeometryError("pedal foot coincides with the anchor")
            nxt = np.roll(spokes, -1, axis=0)
            return np.clip(
                np.sum(spokes * nxt, axis=1) / (norms * np.roll(norms, -1)), -1.0, 1.0)
        return self._get(("cos_phi", base), build)


# ---------------------------------------------------------------------------
# catalog rows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantVariant:
    sub_id: str
    expression: str
    which_n: str   # all|odd|even|mod4=0|mod4=2|mod4!=0|mod4!=2|!=4|=4|=3|>4
    anchor: str    # none|any|O|focus|f1|O_or_focus
    evaluator: Callable[[EvaluationContext], Value] = field(compare=False)
    closed_form: Optional[Callable[[OrbitFamily], Value]] = field(default=None, compare=False)
    closed_form_str: Optional[str] = None
    proof_status: str = "open"
    discrepancy: Optional[str] = None

    def applicable(self, n: int, anchor_role: Optional[str] = None) -> bool:
        if not _WHICH_N[self.which_n](n):
            return False
        return _anchor_ok(self.anchor, anchor_role)


@dataclass(frozen=True)
class InvariantSpec:
    id: str
    cluster: int
    variants: tuple[InvariantVariant, ...]


_WHICH_N: dict[str, Callable[[int], bool]] = {
    "all": lambda n: True,
    "odd": lambda n: n % 2 == 1,
    "even": lambda n: n % 2 == 0,
    "mod4=0": lambda n: n % 4 == 0,
    "mod4=2": lambda n: n % 4 == 2,
    "mod4!=0": lambda n: n % 4 != 0,
    "mod4!=2": lambda n: n % 4 != 2,
    "!=4": lambda n: n != 4,
    "=4": lambda n: n == 4,
    "=3": lambda n: n == 3,
    ">4": lambda n: n > 4,
}


def _anchor_ok(rule: str, role: Optional[str]) -> bool:
    if rule == "none":
        return role is None
    if role is None:
        return False
    if rule == "any":
        return True
    if rule == "focus":
        return role in ("f1", "f2")
    if rule == "f1":
        return role == "f1"
    if rule == "O":
        return role == "O"
    if rule == "O_or_focus":
        return role in ("O", "f1", "f2")
    raise ValueError(f"unknown anchor rule {rule!r}")


# --- evaluator helpers -------------------------------------------------------

def _ratio(num: float, den: float) -> float:
    """Quotient with a degeneracy guard: a denominator at round-off scale
    (e.g. an identically-vanishing signed antipedal area) is a skip, not
    an astronomically noisy value."""
    if abs(den) < 1e-10 * max(1.0, abs(num)):
        raise DegenerateGeometryError("ratio denominator vanishes")
    return num / den


def _prod_cos_half_theta(c):
    return float(np.prod(np.sin(c.angles("orbit") / 2.0)))


def _centroid_pair(poly):
    return np.concatenate([vertex_centroid(poly), area_centroid(poly)])


def _steiner_ratio(c, base):
    ak = signed_area(c.pedal(base, "K"))
    if abs(ak) < 1e-14:
        raise DegenerateGeometryError("Steiner pedal area vanishes")
    return c.area(base) / ak


def _evolute_ratio(c, base):
    aev = c.evolute_area(base)
    if abs(aev) < 1e-14:
        raise DegenerateGeometryError("evolute area vanishes")
    return c.area(base) / aev


def _k606(c):
    # ratio of the orbit's focal pedal area ratio to the outer polygon's
    r_orbit = c.pedal_area("orbit", "f1") / c.pedal_area("orbit", "f2")
    r_outer = c.pedal_area("outer", "f1") / c.pedal_area("outer", "f2")
    return r_orbit / r_outer


def _cf(expr: str, fn) -> tuple[str, Callable]:
    return expr, fn


_ONE = _cf("1", lambda fam: 1.0)


def _build_catalog() -> tuple[InvariantSpec, ...]:
    rows: list[tuple] = []

    def add(sub_id, expr, which_n, anchor, evaluator,
            closed=None, proof="open", discrepancy=None):
        cf_str, cf_fn = (closed if closed is not None else (None, None))
        rows.append(InvariantVariant(
            sub_id=sub_id, expression=expr, which_n=which_n, anchor=anchor,
            evaluator=evaluator, closed_form=cf_fn, closed_form_str=cf_str,
            proof_status=proof, discrepancy=discrepancy))

    # -- cluster 1: distances, areas, angles, curvature ----------------------
    add("k101", "sum cos(theta_i)", "all", "none",
        lambda c: float(np.sum(np.cos(c.angles("orbit")))),
        _cf("J*L - N", lambda f: f.J * f.L - f.config.n), proof="proven")
    add("k102", "prod cos(theta'_i)", "all", "none",
        lambda c: float(np.prod(np.cos(c.angles("outer")))), proof="proven")
    add("k103", "A'/A", "odd", "none",
        lambda c: c.area("outer") / c.area("orbit"), proof="proven")
    add("k104", "sum cos(2 theta'_i)", "all", "none",
        lambda c: float(np.sum(np.cos(2.0 * c.angles("outer")))), proof="proven")
    add("k105", "prod sin(theta_i/2)", "odd", "none",
        _prod_cos_half_theta, proof="proven")
    add("k106", "A' * A", "even", "none",
        lambda c: c.area("outer") * c.area("orbit"), proof="proven")
    # the published table swaps the mod-4 conditions of these two rows: the
    # product is measured constant exactly when N = 2 (mod 4) and the ratio
    # when N = 0 (mod 4), both to machine precision
    add("k107", "(A'/A) * prod sin(theta_i/2)", "mod4=2", "none",
        lambda c: (c.area("outer") / c.area("orbit")) * _prod_cos_half_theta(c))
    add("k108", "(A'/A) / prod sin(theta_i/2)", "mod4=0", "none",
        lambda c: (c.area("outer") / c.area("orbit")) / _prod_cos_half_theta(c))
    add("k109", "A/A''", "odd", "none",
        lambda c: c.area("orbit") / c.area("inner"))
    add("k110", "A * A''", "even", "none",
        lambda c: c.area("orbit") * c.area("inner"))
    add("k111", "A' * A''", "even", "none",
        lambda c: c.area("outer") * c.area("inner"),
        discrepancy="published as invariant for even N, but A'*A'' varies "
                    "over every even family measured; with A'*A and A*A'' "
                    "constant (k106, k110) and A'/A'' constant (k113), "
                    "A'*A'' is proportional to 1/A^2 and cannot be constant "
                    "unless A is; the measured series is reported verbatim")
    add("k112", "A' A'' / A^2", "odd", "none",
        lambda c: c.area("outer") * c.area("inner") / c.area("orbit") ** 2,
        _ONE, proof="proven")
    add("k113", "A'/A''", "all", "none",
        lambda c: c.area("outer") / c.area("inner"),
        _cf("[a*b/(a''*b'')]^2",
            lambda f: (f.config.a * f.config.b / (f.caustic.a * f.caustic.b)) ** 2),
        proof="proven")
    add("k114", "prod d_{1,i}", "mod4=2", "none",
        lambda c: float(np.prod(c.d(1))))
    add("k115", "prod |P'_i - f1|", "mod4=0", "none",
        lambda c: float(np.prod(np.linalg.norm(c.poly("outer") - c.focus(1), axis=1))))
    add("k116", "prod l_i / prod r_i", "all", "none",
        lambda c: float(np.prod(c.l_r()[0] / c.l_r()[1])), _ONE, proof="proven")
    add("k117", "[prod l_i, prod r_i]", "even", "none",
        lambda c: np.array([np.prod(c.l_r()[0]), np.prod(c.l_r()[1])]))
    add("k118", "[sum l_i, sum r_i]", "odd", "none",
        lambda c: np.array([np.sum(c.l_r()[0]), np.sum(c.l_r()[1])]),
        _cf("[L/2, L/2]", lambda f: np.array([f.L / 2.0, f.L / 2.0])))
    add("k119", "sum kappa_i^(2/3)", "all", "none",
        lambda c: float(np.sum(c.kappa() ** (2.0 / 3.0))),
        _cf("L/[2 J (a b)^(4/3)]",
            lambda f: f.L / (2.0 * f.J * (f.config.a * f.config.b) ** (4.0 / 3.0))),
        proof="proven")
    add("k120", "sum cos(alpha_{1,i})", "all", "none",
        lambda c: float(np.sum(np.cos(c.alpha(1)))))
    add("k121", "sum d_{1,i}", "even", "none",
        lambda c: float(np.sum(c.d(1))), proof="symmetry")

    # -- cluster 2: pedal polygons of the orbit -------------------------------
    add("k201", "[min,max] |Q_i - O|", "all", "focus",
        lambda c: np.array([
            np.min(np.linalg.norm(c.pedal("orbit", "m"), axis=1)),
            np.max(np.linalg.norm(c.pedal("orbit", "m"), axis=1))]),
        _cf("[a'', a'']", lambda f: np.array([f.caustic.a, f.caustic.a])),
        proof="proven")
    add("k202a", "prod |Q_i - M|", "even", "focus",
        lambda c: float(np.prod(np.linalg.norm(c.pedal("orbit", "m") - c.m, axis=1))),
        _cf("(b'')^N", lambda f: f.caustic.b ** f.config.n), proof="proven")
    add("k202b", "prod |Q_i - M|", "mod4=0", "O",
        lambda c: float(np.prod(np.linalg.norm(c.pedal("orbit", "m") - c.m, axis=1))),
        _cf("(a'' b'')^(N/2)",
            lambda f: (f.caustic.a * f.caustic.b) ** (f.config.n / 2.0)),
        proof="proven")
    add("k203a", "A * A_m", "mod4=0", "any",
        lambda c: c.area("orbit") * c.pedal_area("orbit", "m"))
    add("k203b", "A * A_m", "mod4!=2", "O",
        lambda c: c.area("orbit") * c.pedal_area("orbit", "m"))
    add("k204", "A / A_m", "mod4=2", "any",
        lambda c: c.area("orbit") / c.pedal_area("orbit", "m"))
    add("k205", "sum cos(phi_i)", "all", "any",
        lambda c: float(np.sum(c.cos_phi("orbit"))), proof="proven")

    # -- cluster 3: pedal polygons of the outer polygon -----------------------
    add("k301", "[min,max] |Q'_i - O|", "all", "focus",
        lambda c: np.array([
            np.min(np.linalg.norm(c.pedal("outer", "m"), axis=1)),
            np.max(np.linalg.norm(c.pedal("outer", "m"), axis=1))]),
        _cf("[a, a]", lambda f: np.array([f.config.a, f.config.a])),
        proof="proven")
    add("k302", "sum |Q'_i - M|^2", "all", "any",
        lambda c: float(np.sum(np.linalg.norm(c.pedal("outer", "m") - c.m, axis=1) ** 2)),
        proof="proven")
    add("k303a", "A' * A'_m", "mod4=2", "any",
        lambda c: c.area("outer") * c.pedal_area("outer", "m"))
    add("k303b", "A' * A'_m", "mod4!=0", "O",
        lambda c: c.area("outer") * c.pedal_area("outer", "m"))
    add("k304", "A' / A'_m", "mod4=0", "any",
        lambda c: c.area("outer") / c.pedal_area("outer", "m"))
    add("k305", "prod cos(phi'_i)", "all", "any",
        lambda c: float(np.prod(c.cos_phi("outer"))), proof="proven")
    add("k306", "C'_0 (vertex centroid of outer pedal)", "all", "any",
        lambda c: vertex_centroid(c.pedal("outer", "m")), proof="proven")
    add("k307", "C'_2 (area centroid of outer pedal)", "even", "any",
        lambda c: area_centroid(c.pedal("outer", "m")))

    # -- cluster 4: antipedal polygons ----------------------------------------
    # measured: only focus anchors make these constant (the center-anchored
    # antipedal areas vary on every even family), and the mod4=0 ratio needs
    # the outer polygon's antipedal in the denominator
    add("k401", "A' * A*_m", "mod4=2", "focus",
        lambda c: c.area("outer") * c.antipedal_area("orbit", "m"))
    add("k402", "A' / A'*_m", "mod4=0", "focus",
        lambda c: _ratio(c.area("outer"), c.antipedal_area("outer", "m")))
    add("k403a", "A_m * A*_m", "odd", "O",
        lambda c: c.pedal_area("orbit", "m") * c.antipedal_area("orbit", "m"))
    add("k403b", "A_m * A*_m", "mod4=0", "focus",
        lambda c: c.pedal_area("orbit", "m") * c.antipedal_area("orbit", "m"))
    add("k404", "A*_m / A_m", "mod4=2", "focus",
        lambda c: c.antipedal_area("orbit", "m") / c.pedal_area("orbit", "m"))
    add("k405", "C*_0 (vertex centroid of orbit antipedal)", "even", "O_or_focus",
        lambda c: vertex_centroid(c.antipedal("orbit", "m")))
    add("k406a", "[C*'_0, C*'_2] of outer antipedal", "even", "O",
        lambda c: _centroid_pair(c.antipedal("outer", "m")),
        _cf("O", lambda f: np.zeros(4)))
    add("k406b", "[C*'_0, C*'_2] of outer antipedal", "=4", "focus",
        lambda c: _centroid_pair(c.antipedal("outer", "m")))
    add("k407", "C*'_0 (vertex centroid of outer antipedal)", "even", "focus",
        lambda c: vertex_centroid(c.antipedal("outer", "m")))

    # -- cluster 5: Steiner curvature-centroid pedals --------------------------
    add("k501", "A / A_k", "odd", "none", lambda c: _steiner_ratio(c, "orbit"))
    add("k502", "A' / A'_k", "odd", "none", lambda c: _steiner_ratio(c, "outer"))
    add("k503", "A'' / A''_k", "odd", "none", lambda c: _steiner_ratio(c, "inner"))

    # -- cluster 6: pairs of focal pedals/antipedals ---------------------------
    add("k601", "sum q_{1,i} * sum q_{2,i}", "odd", "none",
        lambda c: float(np.sum(c.q(1)) * np.sum(c.q(2))))
    add("k602", "prod q_{1,i} * prod q_{2,i}", "all", "none",
        lambda c: float(np.prod(c.q(1)) * np.prod(c.q(2))))
    add("k603", "sum q*_{1,i} / sum q*_{2,i}", "all", "none",
        lambda c: float(np.sum(c.q_star(1)) / np.sum(c.q_star(2))), _ONE)
    add("k604a", "Abar_1 * Abar_2", "odd", "none",
        lambda c: c.pedal_area("orbit", "f1") * c.pedal_area("orbit", "f2"))
    add("k604b", "Abar_1 / Abar_2", "even", "none",
        lambda c: c.pedal_area("orbit", "f1") / c.pedal_area("orbit", "f2"),
        _ONE, proof="symmetry")
    add("k605a", "Abar'_1 * Abar'_2", "odd", "none",
        lambda c: c.pedal_area("outer", "f1") * c.pedal_area("outer", "f2"))
    add("k605b", "Abar'_1 / Abar'_2", "even", "none",
        lambda c: c.pedal_area("outer", "f1") / c.pedal_area("outer", "f2"),
        _ONE, proof="symmetry")
    add("k606", "(Abar_1/Abar_2) / (Abar'_1/Abar'_2)", "all", "none", _k606)
    add("k607", "Abar*_1 / Abar*_2", "mod4=0", "none",
        lambda c: _ratio(c.antipedal_area("orbit", "f1"),
                         c.antipedal_area("orbit", "f2")),
        _ONE)
    add("k608", "Abar'*_1 / Abar'*_2", "even", "none",
        lambda c: _ratio(c.antipedal_area("outer", "f1"),
                         c.antipedal_area("outer", "f2")),
        _ONE)
    add("k609", "Abar''_1 / Abar''_2", "even", "none",
        lambda c: c.pedal_area("inner", "f1") / c.pedal_area("inner", "f2"),
        _ONE)
    add("k610", "Abar''*_1 / Abar''*_2", "even", "none",
        lambda c: _ratio(c.antipedal_area("inner", "f1"),
                         c.antipedal_area("inner", "f2")),
        _ONE)

    # -- cluster 7: evolute polygons -------------------------------------------
    add("k701", "A / A_ev", ">4", "none", lambda c: _evolute_ratio(c, "orbit"))
    add("k702", "A' / A'_ev", ">4", "none", lambda c: _evolute_ratio(c, "outer"))
    add("k703", "A'' / A''_ev", ">4", "none", lambda c: _evolute_ratio(c, "inner"))

    # -- cluster 8: inversive objects -------------------------------------------
    add("k801", "sum 1/d_{j,i}", "all", "focus",
        lambda c: float(np.sum(1.0 / c.d(c.j))), proof="proven")
    add("k802", "L_dagger (inversive perimeter)", "all", "focus",
        lambda c: perimeter(c.inversive("orbit", c.j)))
    add("k803", "sum cos(theta_dagger)", "!=4", "focus",
        lambda c: float(np.sum(np.cos(internal_angles(c.inversive("orbit", c.j))))))
    add("k804a", "A * A_dagger", "mod4=0", "focus",
        lambda c: c.area("orbit") * c.inversive_area("orbit", c.j))
    add("k804b", "A * A_dagger", "=4", "focus",
        lambda c: c.area("orbit") * c.inversive_area("orbit", c.j),
        _cf("4", lambda f: 4.0))
    add("k805", "A / A_dagger", "mod4=2", "focus",
        lambda c: c.area("orbit") / c.inversive_area("orbit", c.j))
    add("k806a", "A'_dagger / A_dagger", "all", "focus",
        lambda c: c.inversive_area("outer", c.j) / c.inversive_area("orbit", c.j))
    add("k806b", "A'_dagger / A_dagger", "=4", "focus",
        lambda c: c.inversive_area("outer", c.j) / c.inversive_area("orbit", c.j),
        _cf("2", lambda f: 2.0),
        discrepancy="published closed form 2 disagrees with the measured "
                    "constant (signed-area ratio evaluates to 1/2 at N=4); "
                    "the measured series is reported and not asserted")
    add("k807", "A * A_otimes", "even", "none",
        lambda c: c.area("orbit") * c.ellipse_inverse_area("orbit_wrt_caustic"))
    add("k808", "A / A_otimes", "odd", "none",
        lambda c: c.area("orbit") / c.ellipse_inverse_area("orbit_wrt_caustic"))
    add("k809", "A' * A'_ominus", "even", "none",
        lambda c: c.area("outer") * c.ellipse_inverse_area("outer_wrt_billiard"))
    add("k810", "A' / A'_ominus", "odd", "none",
        lambda c: c.area("outer") / c.ellipse_inverse_area("outer_wrt_billiard"))
    add("k811", "sum w_i^2 (outer-dual side lengths)", "all", "focus",
        lambda c: float(np.sum(side_lengths(c.dual_of_outer(c.j)) ** 2)))
    add("k812a", "sum cos(psi_{1,i})", "all", "f1",
        lambda c: float(np.sum(np.cos(internal_angles(c.polar(1))))))
    add("k812b", "sum cos(psi_{1,i})", "=4", "f1",
        lambda c: float(np.sum(np.cos(internal_angles(c.polar(1))))),
        _cf("0", lambda f: 0.0))
    add("k813", "A_pol / A_dagger", "all", "focus",
        lambda c: signed_area(c.polar(c.j)) / c.inversive_area("orbit", c.j))
    add("k814", "A_pol / A_dual", "all", "focus",
        lambda c: signed_area(c.polar(c.j)) / signed_area(c.dual(c.j)))
    add("k815", "Abar_j * A_dual", "odd", "focus",
        lambda c: c.pedal_area("orbit", f"f{c.j}") * signed_area(c.dual(c.j)))
    add("k816", "Abar_j / A_dual", "even", "focus",
        lambda c: c.pedal_area("orbit", f"f{c.j}") / signed_area(c.dual(c.j)))
    add("k817", "A_dagger * A_ant", "mod4=0", "focus",
        lambda c: c.inversive_area("orbit", c.j) * c.antipedal_area("orbit", f"f{c.j}"))
    add("k818", "A_dagger / A_ant", "mod4=2", "focus",
        lambda c: _ratio(c.inversive_area("orbit", c.j),
                         c.antipedal_area("orbit", f"f{c.j}")))

    # -- cluster 9: pairs of inversive objects -----------------------------------
    add("k901", "sum(1/d_1) / sum(1/d_2)", "all", "none",
        lambda c: float(np.sum(1.0 / c.d(1)) / np.sum(1.0 / c.d(2))),
        _ONE, proof="proven")
    add("k902", "sum 1/(d_{1,i} d_{2,i})", "all", "none",
        lambda c: float(np.sum(1.0 / (c.d(1) * c.d(2)))),
        _cf("L/[2 J (a b)^2]",
            lambda f: f.L / (2.0 * f.J * (f.config.a * f.config.b) ** 2)),
        proof="proven")
    add("k903a", "A_dagger_1 * A_dagger_2", "odd", "none",
        lambda c: c.inversive_area("orbit", 1) * c.inversive_area("orbit", 2))
    add("k903b", "A_dagger_1 / A_dagger_2", "even", "none",
        lambda c: c.inversive_area("orbit", 1) / c.inversive_area("orbit", 2),
        _ONE, proof="symmetry")
    add("k904a", "A'_dagger_1 * A'_dagger_2", "odd", "none",
        lambda c: c.inversive_area("outer", 1) * c.inversive_area("outer", 2))
    add("k904b", "A'_dagger_1 / A'_dagger_2", "even", "none",
        lambda c: c.inversive_area("outer", 1) / c.inversive_area("outer", 2),
        _ONE, proof="symmetry")
    add("k905", "A''_dagger_1 / A''_dagger_2", "even", "none",
        lambda c: c.inversive_area("inner", 1) / c.inversive_area("inner", 2),
        _ONE)
    add("k906", "A'_ddagger_1 / A'_ddagger_2", "even", "none",
        lambda c: c.locus_inversive_area(1) / c.locus_inversive_area(2),
        _ONE)
    add("k907a", "A_dual_1 * A_dual_2", "odd", "none",
        lambda c: signed_area(c.dual(1)) * signed_area(c.dual(2)))
    add("k907b", "A_dual_1 / A_dual_2", "even", "none",
        lambda c: signed_area(c.dual(1)) / signed_area(c.dual(2)),
        _ONE)
    add("k908a", "A_ped_dagger_1 / A_ped_dagger_2", "even", "none",
        lambda c: signed_area(c.pedal_of_inversive(1)) / signed_area(c.pedal_of_inversive(2)),
        _ONE)
    add("k908b", "A_ped_dagger_1 / A_ped_dagger_2", "=3", "none",
        lambda c: signed_area(c.pedal_of_inversive(1)) / signed_area(c.pedal_of_inversive(2)),
        _ONE)

    # group variants by base id
    specs: dict[str, list[InvariantVariant]] = {}
    for v in rows:
        base = v.sub_id.rstrip("ab")
        specs.setdefault(base, []).append(v)
    out = []
    for base, variants in specs.items():
        cluster = int(base[1])
        out.append(InvariantSpec(id=base, cluster=cluster, variants=tuple(variants)))
    return tuple(out)


_CATALOG: tuple[InvariantSpec, ...] = _build_catalog()
_BY_ID: dict[str, InvariantSpec] = {s.id: s for s in _CATALOG}
_BY_SUB_ID: dict[str, InvariantVariant] = {
    v.sub_id: v for s in _CATALOG for v in s.variants
}


def list_invariants() -> list[InvariantSpec]:
    """All 82 catalog entries, ordered by id."""
    return sorted(_CATALOG, key=lambda s: s.id)


def list_variants() -> list[InvariantVariant]:
    """All concrete variants (sub-ids expanded), ordered by sub-id."""
    return sorted(_BY_SUB_ID.values(), key=lambda v: v.sub_id)


def lookup(key: str) -> Union[InvariantSpec, InvariantVariant]:
    """Find a catalog entry by id ('k202') or sub-id ('k202a'). A bare id
    with a single variant resolves to that variant."""
    if key in _BY_SUB_ID:
        return _BY_SUB_ID[key]
    if key in _BY_ID:
        spec = _BY_ID[key]
        if len(spec.variants) == 1:
            return spec.variants[0]
        return spec
    raise KeyError(f"unknown invariant id {key!r}")


def applicability(key: str, n: int, anchor_role: Optional[str] = None) -> bool:
    entry = lookup(key)
    if isinstance(entry, InvariantSpec):
        return any(v.applicable(n, anchor_role) for v in entry.variants)
    return entry.applicable(n, anchor_role)


def evaluate(key: str, ctx: EvaluationContext) -> Value:
    """Evaluate one invariant expression; degenerate configurations raise
    SkipSample so sweeps can record a skip."""
    entry = lookup(key)
    if isinstance(entry, InvariantSpec):
        raise ValueError(f"{key!r} is ambiguous; use a sub-id "
                         f"({', '.join(v.sub_id for v in entry.variants)})")
    try:
        return entry.evaluator(ctx)
    except DegenerateGeometryError as exc:
        raise SkipSample(str(exc)) from exc
    except (ZeroDivisionError, FloatingPointError) as exc:
        raise SkipSample(str(exc)) from exc


def closed_form_value(key: str, family: OrbitFamily) -> Optional[Value]:
    entry = lookup(key)
    if isinstance(entry, InvariantSpec):
        raise ValueError(f"{key!r} is ambiguous; use a sub-id")
    if entry.closed_form is None:
        return None
    return entry.closed_form(family)


def catalog_json() -> str:
    """Machine-readable catalog listing for clients and docs."""
    payload = []
    for spec in list_invariants():
        payload.append({
            "id": spec.id,
            "cluster": spec.cluster,
            "variants": [
                {
                    "sub_id": v.sub_id,
                    "expression": v.expression,
                    "which_n": v.which_n,
                    "anchor": v.anchor,
                    "closed_form": v.closed_form_str,
                    "proof_status": v.proof_status,
                    "discrepancy": v.discrepancy,
                }
                for v in spec.variants
            ],
        })
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))

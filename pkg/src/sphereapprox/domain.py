"""Fundamental cones and spherical triangles of the reflection groups.

The fundamental cone is ``{p : <p, o_i> <= 0}`` for the outward normals
``o = (n1, -n2, n3)`` of the generator mirrors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .coxeter import (
    CoxeterSymbol,
    FiniteGroup,
    GeneratorSet,
    as_symbol,
    build_generators,
)
from .geom import EPS_GEO, normalize, reflect_normal, vector

POINT_NAMES = ("x", "y", "z", "m1", "m2", "m3", "centroid")


class UnsupportedGroupError(ValueError):
    pass


@dataclass(frozen=True)
class FundamentalCone:
    generators: GeneratorSet

    @property
    def normals(self) -> np.ndarray:
        return np.array(self.generators.outward)

    def contains(self, p, tol: float = EPS_GEO) -> bool:
        return bool(np.all(self.normals @ vector(p) <= tol))

    def sample(self, count: int, rng: np.random.Generator, radius: float = 1.0) -> np.ndarray:
        """Uniform points of the cone inside the ball of ``radius`` (rejection sampling)."""
        out: list[np.ndarray] = []
        have = 0
        while have < count:
            cand = rng.uniform(-radius, radius, size=(max(4096, 8 * count), 3))
            cand = cand[np.linalg.norm(cand, axis=1) <= radius]
            cand = cand[np.all(cand @ self.normals.T <= 0.0, axis=1)]
            out.append(cand)
            have += len(cand)
        return np.concatenate(out)[:count]

    def sample_sphere(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform points of the spherical patch cut out by the cone."""
        out: list[np.ndarray] = []
        have = 0
        while have < count:
            cand = rng.normal(size=(max(4096, 8 * count), 3))
            cand /= np.linalg.norm(cand, axis=1)[:, None]
            cand = cand[np.all(cand @ self.normals.T <= 0.0, axis=1)]
            out.append(cand)
            have += len(cand)
        return np.concatenate(out)[:count]


@dataclass(frozen=True)
class SphericalTriangle:
    """Vertices of the fundamental spherical triangle and its side midpoints.

    ``z`` lies on mirrors 1 and 3, ``x`` on mirrors 1 and 2, ``y`` on mirrors
    2 and 3.  The midpoints are Euclidean chord midpoints, not projected to
    the sphere.
    """

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    generators: GeneratorSet = field(repr=False)

    @property
    def m1(self) -> np.ndarray:
        return 0.5 * (self.x + self.z)

    @property
    def m2(self) -> np.ndarray:
        return 0.5 * (self.x + self.y)

    @property
    def m3(self) -> np.ndarray:
        return 0.5 * (self.z + self.y)

    @property
    def centroid(self) -> np.ndarray:
        return (self.x + self.y + self.z) / 3.0

    @property
    def vertices(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def cone(self) -> FundamentalCone:
        return FundamentalCone(self.generators)

    def point(self, name: str) -> np.ndarray:
        if name not in POINT_NAMES:
            raise KeyError(f"unknown triangle point {name!r}; choose from {', '.join(POINT_NAMES)}")
        return getattr(self, name)

    def patch(self, resolution: int) -> tuple[np.ndarray, np.ndarray]:
        """Points of the spherical triangle on a barycentric grid.

        Returns ``(weights, points)``; row ``k`` of ``points`` is the
        normalized combination ``weights[k] @ (x, y, z)``.  Boundary arcs and
        vertices are included.
        """
        i, j = np.triu_indices(resolution + 1)
        a = (resolution - j) / resolution
        b = (j - i) / resolution
        w = np.stack([a, b, 1.0 - a - b], axis=1)
        w = np.clip(w, 0.0, 1.0)
        pts = w @ self.vertices
        return w, pts / np.linalg.norm(pts, axis=1)[:, None]

    @cached_property
    def default_patch(self) -> tuple[np.ndarray, np.ndarray]:
        # 10011 points
        return self.patch(140)


def _mirror_intersection(gens: GeneratorSet, i: int, j: int) -> np.ndarray:
    normals = gens.outward
    k = 3 - i - j
    v = normalize(np.cross(normals[i], normals[j]))
    if v @ normals[k] > 0:
        v = -v
    # cos(pi/2) and friends leave ~1e-17 residue in exactly-zero coordinates
    v[np.abs(v) < 1e-15] = 0.0
    return v + 0.0


def triangle_for(gens: GeneratorSet) -> SphericalTriangle:
    """Spherical triangle bounded by any three mirrors whose cone is simplicial."""
    return SphericalTriangle(
        x=_mirror_intersection(gens, 0, 1),
        y=_mirror_intersection(gens, 1, 2),
        z=_mirror_intersection(gens, 0, 2),
        generators=gens,
    )


def fundamental_triangle(symbol) -> SphericalTriangle:
    symbol = as_symbol(symbol)
    if symbol.is_dihedral:
        raise UnsupportedGroupError(
            f"{symbol}: fundamental triangles are defined for [3,3], [3,4] and [3,5] only"
        )
    return triangle_for(build_generators(symbol))


def in_fundamental_domain(p, cone: FundamentalCone, tol: float = EPS_GEO) -> bool:
    return cone.contains(p, tol)


def fold_to_domain(p, g: FiniteGroup, tol: float = EPS_GEO) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(h @ p, h)`` for the first element ``h`` (in generation order)
    that moves ``p`` into the fundamental cone."""
    p = vector(p)
    normals = np.array(g.generators.outward)
    images = g.elements @ p
    ok = np.all(images @ normals.T <= tol, axis=1)
    k = int(np.argmax(ok))
    if not ok[k]:
        raise RuntimeError("no group element folds the point into the cone; is the group complete?")
    return images[k], g.elements[k]


@dataclass
class PropertyReport:
    """Outcome of a randomized lemma check."""

    name: str
    symbol: CoxeterSymbol
    trials: int
    checks: int
    violations: int
    worst_margin: float
    worst_case: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def summary(self) -> str:
        status = "ok" if self.ok else "FAILED"
        return (f"{self.name} {self.symbol}: {self.trials} trials, {self.checks} checks, "
                f"{self.violations} violations, worst margin {self.worst_margin:.3e} [{status}]")


def check_dirichlet(g: FiniteGroup, trials: int = 100, seed: int = 0,
                    tol: float = EPS_GEO) -> PropertyReport:
    """Check that ``p`` is the orbit point nearest to ``y`` for ``p``, ``y`` in the cone.

    ``p`` is drawn from the cone inside the ball of radius 2 and ``y`` from the
    spherical patch.  The margin is ``d(h p, y) - d(p, y)``, minimized over all
    group elements and trials.
    """
    rng = np.random.default_rng(seed)
    cone = FundamentalCone(g.generators)
    ps = cone.sample(trials, rng, radius=2.0)
    ys = cone.sample_sphere(trials, rng)
    worst, worst_case, violations = np.inf, None, 0
    for p, y in zip(ps, ys):
        base = np.linalg.norm(p - y)
        margins = np.linalg.norm(g.elements @ p - y, axis=1) - base
        bad = margins < -tol
        violations += int(np.sum(bad))
        k = int(np.argmin(margins))
        if margins[k] < worst:
            worst, worst_case = float(margins[k]), (p, y, g.elements[k])
    return PropertyReport("dirichlet", g.symbol, trials, trials * len(g), violations, worst,
                          worst_case if violations else None)


def check_same_side(g: FiniteGroup, trials: int = 100, seed: int = 0,
                    tol: float = EPS_GEO) -> PropertyReport:
    """Check ``<h x, n_i> <h y, n_i> >= 0`` for x, y in the cone, every h and mirror i."""
    rng = np.random.default_rng(seed)
    cone = FundamentalCone(g.generators)
    xs = cone.sample(trials, rng, radius=1.0)
    ys = cone.sample(trials, rng, radius=1.0)
    normals = np.array(g.generators.normals)
    worst, worst_case, violations = np.inf, None, 0
    for x, y in zip(xs, ys):
        prod = (g.elements @ x @ normals.T) * (g.elements @ y @ normals.T)
        violations += int(np.sum(prod < -tol))
        k, i = np.unravel_index(int(np.argmin(prod)), prod.shape)
        if prod[k, i] < worst:
            worst, worst_case = float(prod[k, i]), (x, y, g.elements[k], int(i))
    return PropertyReport("same-side", g.symbol, trials, trials * len(g) * 3, violations, worst,
                          worst_case if violations else None)


def generator_rotations(gens: GeneratorSet) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The rotations R1R2, R2R3 and R3R1."""
    r1, r2, r3 = (reflect_normal(n) for n in gens.normals)
    return r1 @ r2, r2 @ r3, r3 @ r1

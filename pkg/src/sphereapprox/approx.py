"""Hausdorff distance from finite orbits to the unit sphere, and its minimizers."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import pi, sqrt

import numpy as np
from scipy.spatial import cKDTree

from .coxeter import CoxeterSymbol, FiniteGroup, as_symbol, build_generators, generate_group, orbit
from .domain import SphericalTriangle, UnsupportedGroupError, fundamental_triangle, triangle_for
from .geom import EPS_GEO, DegenerateTriangleError, PreconditionError, vector

log = logging.getLogger(__name__)

INV_PHI = (sqrt(5.0) - 1.0) / 2.0
DEFAULT_SAMPLES = 200_000


@dataclass(frozen=True)
class ChebyshevSolution:
    symbol: CoxeterSymbol
    center: np.ndarray
    radius: float
    bisector_params: tuple[float, float]


@dataclass(frozen=True)
class HausdorffReport:
    seed: np.ndarray
    scale: float
    orbit_size: int
    sphere_to_orbit: float
    orbit_to_sphere: float
    total: float
    method: str

    def as_dict(self) -> dict:
        return {
            "seed": [float(v) for v in self.seed],
            "scale": self.scale,
            "orbit_size": self.orbit_size,
            "sphere_to_orbit": self.sphere_to_orbit,
            "orbit_to_sphere": self.orbit_to_sphere,
            "total": self.total,
            "method": self.method,
        }


def chebyshev_center(tri: SphericalTriangle, symbol=None) -> ChebyshevSolution:
    """Circumcenter of the triangle's vertices from two perpendicular bisectors.

    With ``u = x - y`` and ``v = x - z`` the bisector of ``[x, y]`` runs
    through ``(x + y)/2`` along ``w1 = u - (<u,u>/<u,v>) v`` and the bisector
    of ``[x, z]`` through ``(x + z)/2`` along ``w2 = v - (<v,v>/<u,v>) u``.
    ``bisector_params`` is ``(s, t)`` for the intersection
    ``(x + z)/2 + s w2 = (x + y)/2 + t w1``.
    """
    x, y, z = tri.x, tri.y, tri.z
    u, v = x - y, x - z
    uv = float(u @ v)
    if abs(uv) <= EPS_GEO or np.linalg.norm(np.cross(u, v)) <= EPS_GEO:
        raise DegenerateTriangleError("bisector system is singular for this triangle")
    a1 = -float(u @ u) / uv
    a2 = -float(v @ v) / uv
    log.debug("bisector coefficients: %.6g, %.6g (unsquared-norm variant: %.6g, %.6g)",
              a1, a2, -np.linalg.norm(u) / uv, -np.linalg.norm(v) / uv)
    w1 = u + a1 * v
    w2 = v + a2 * u
    mxy, mxz = 0.5 * (x + y), 0.5 * (x + z)
    # mxy + t w1 = mxz + s w2: three equations, two unknowns, consistent
    lhs = np.stack([w1, -w2], axis=1)
    (t, s), *_ = np.linalg.lstsq(lhs, mxz - mxy, rcond=None)
    center = mxy + t * w1
    radius = float(np.linalg.norm(center - x))
    sym = as_symbol(symbol) if symbol is not None else _symbol_of(tri)
    return ChebyshevSolution(sym, center, radius, (float(s), float(t)))


def _symbol_of(tri: SphericalTriangle) -> CoxeterSymbol:
    n1, n2, n3 = tri.generators.normals
    m = int(round(pi / np.arccos(np.clip(n1 @ n2, -1, 1))))
    n = int(round(pi / np.arccos(np.clip(n2 @ n3, -1, 1))))
    return CoxeterSymbol(m, n)


def _refine_patch_max(tri: SphericalTriangle, p: np.ndarray, weights: np.ndarray, step: float,
                      fine: int = 10) -> float:
    # one ascent step: dense barycentric sub-grid of one coarse cell around the argmax
    offs = np.linspace(-step, step, 2 * fine + 1)
    da, db = np.meshgrid(offs, offs)
    w = np.stack([weights[0] + da.ravel(), weights[1] + db.ravel(),
                  weights[2] - da.ravel() - db.ravel()], axis=1)
    w = w[np.all(w >= 0.0, axis=1)]
    pts = w @ tri.vertices
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    return float(np.max(np.linalg.norm(pts - p, axis=1)))


def patch_sup_distance(tri: SphericalTriangle, p) -> float:
    """Largest distance from ``p`` to a point of the spherical triangle."""
    p = vector(p)
    best = float(np.max(np.linalg.norm(tri.vertices - p, axis=1)))
    weights, pts = tri.default_patch
    d = np.linalg.norm(pts - p, axis=1)
    k = int(np.argmax(d))
    refined = _refine_patch_max(tri, p, weights[k], 1.0 / 140)
    sampled = max(float(d[k]), refined)
    if sampled > best + EPS_GEO:
        log.debug("patch sample beats the vertex max by %.3g", sampled - best)
        best = sampled
    return best


def hausdorff_to_sphere_exact(g: FiniteGroup, tri: SphericalTriangle, p) -> HausdorffReport:
    """Hausdorff distance between the orbit of ``p`` and the unit sphere.

    ``p`` must lie in the fundamental cone; every sphere point then has its
    nearest orbit point in the copy of the cone it belongs to, so the sup over
    the sphere reduces to the sup over the fundamental triangle.
    """
    p = vector(p)
    if not tri.cone.contains(p):
        raise PreconditionError("seed lies outside the fundamental cone; fold it first with fold_to_domain")
    s2o = patch_sup_distance(tri, p)
    norm = float(np.linalg.norm(p))
    o2s = abs(1.0 - norm)
    return HausdorffReport(p, norm, len(orbit(g, p)), s2o, o2s, max(s2o, o2s), "exact-vertex")


def fibonacci_sphere(count: int) -> np.ndarray:
    """Near-uniform deterministic points on the unit sphere (golden-angle spiral)."""
    k = np.arange(count) + 0.5
    zc = 1.0 - 2.0 * k / count
    r = np.sqrt(1.0 - zc * zc)
    phi = pi * (3.0 - sqrt(5.0)) * k
    return np.stack([r * np.cos(phi), r * np.sin(phi), zc], axis=1)


def golden_section(f, lo: float, hi: float, tol: float = 1e-6, maximize: bool = False) -> tuple[float, float]:
    """Golden-section search for a minimum (or maximum) of ``f`` on ``[lo, hi]``.

    Returns ``(argbest, best)``; the interval endpoints are candidates too.
    """
    sign = -1.0 if maximize else 1.0
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = sign * f(c), sign * f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = sign * f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = sign * f(d)
    cands = [(fc, c), (fd, d), (sign * f(lo), lo), (sign * f(hi), hi)]
    val, arg = min(cands)
    return arg, sign * val


def _rotate_toward(s: np.ndarray, e: np.ndarray, theta: float) -> np.ndarray:
    return np.cos(theta) * s + np.sin(theta) * e


def hausdorff_to_sphere_sampled(points, samples: int = DEFAULT_SAMPLES) -> HausdorffReport:
    """Estimate the Hausdorff distance from ``points`` to the sphere by sampling.

    The sphere side is the max over a Fibonacci lattice of the distance to the
    nearest point, polished by a golden-section search along two tangent
    directions at the argmax.  It approaches the true value from below.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.size == 0:
        raise PreconditionError("need at least one point")
    if samples < 1000:
        raise PreconditionError("use at least 1000 sphere samples")
    tree = cKDTree(pts)
    lattice = fibonacci_sphere(samples)
    dist, _ = tree.query(lattice)
    k = int(np.argmax(dist))
    best, s = float(dist[k]), lattice[k]

    def nearest(q):
        return float(tree.query(q)[0])

    e1 = np.cross(s, [0.0, 0.0, 1.0] if abs(s[2]) < 0.9 else [1.0, 0.0, 0.0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(s, e1)
    h = 2.0 * sqrt(4.0 * pi / samples)
    for e in (e1, e2):
        theta, val = golden_section(lambda t: nearest(_rotate_toward(s, e, t)), -h, h, tol=1e-9,
                                    maximize=True)
        if val > best:
            best, s = val, _rotate_toward(s, e, theta)
            e2 = np.cross(s, e1)
            e2 /= np.linalg.norm(e2)
    norms = np.linalg.norm(pts, axis=1)
    o2s = float(np.max(np.abs(1.0 - norms)))
    seed = pts[0]
    return HausdorffReport(seed, float(norms[0]), len(pts), best, o2s, max(best, o2s), "sampled")


def optimal_scale(g: FiniteGroup, tri: SphericalTriangle, direction,
                  lo: float = 0.0, hi: float = 2.0, grid_step: float = 0.01,
                  tol: float = 1e-6) -> tuple[float, HausdorffReport]:
    """Best radial scale ``t`` for the orbit of ``t * direction``.

    A coarse grid brackets the minimum, then golden-section search narrows the
    bracket to ``tol``.
    """
    d = vector(direction)
    if not np.any(d):
        raise PreconditionError("direction must be nonzero")
    if not tri.cone.contains(d):
        raise PreconditionError("direction lies outside the fundamental cone")

    def cost(t: float) -> float:
        p = t * d
        return max(patch_sup_distance(tri, p), abs(1.0 - float(np.linalg.norm(p))))

    grid = np.arange(lo, hi + 0.5 * grid_step, grid_step)
    vals = [cost(t) for t in grid]
    k = int(np.argmin(vals))
    a, b = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    t, _ = golden_section(cost, float(a), float(b), tol=tol)
    return t, hausdorff_to_sphere_exact(g, tri, t * d)


def group_sphere_distance(symbol) -> tuple[HausdorffReport, ChebyshevSolution]:
    """Distance from the group to the sphere: the exact report at the Chebyshev center."""
    symbol = as_symbol(symbol)
    if symbol.is_dihedral:
        raise UnsupportedGroupError(f"{symbol}: use dihedral_bound for the [2,n] family")
    g = generate_group(symbol)
    tri = fundamental_triangle(symbol)
    sol = chebyshev_center(tri, symbol)
    return hausdorff_to_sphere_exact(g, tri, sol.center), sol


@dataclass(frozen=True)
class DihedralBound:
    n: int
    grid_minimum: float
    sampled_minimum: float
    seed: np.ndarray

    @property
    def value(self) -> float:
        return min(self.grid_minimum, self.sampled_minimum)


def dihedral_bound(n: int, grid: float = 1e-3, samples: int = DEFAULT_SAMPLES) -> DihedralBound:
    """Smallest Hausdorff distance to the sphere over seeds of the [2,n] group.

    Seeds range over latitude in [0, pi/2] and radius in [0, 2] on the
    azimuth bisecting the fundamental lune; moving off the bisector only
    brings one equatorial vertex of the triangle farther away.  Grid values use
    the triangle-vertex maximum; the best seed is re-evaluated with the
    sampling estimate.
    """
    if n < 2:
        raise PreconditionError("[2,n] needs n >= 2")
    symbol = CoxeterSymbol(2, n)
    gens = build_generators(symbol)
    tri = triangle_for(gens)
    equator = tri.x + tri.z
    equator /= np.linalg.norm(equator)
    pole = tri.y
    lat = np.arange(0.0, pi / 2 + 0.5 * grid, grid)
    rad = np.arange(0.0, 2.0 + 0.5 * grid, grid)
    dirs = np.cos(lat)[:, None] * equator + np.sin(lat)[:, None] * pole
    verts = tri.vertices
    best, best_seed = np.inf, np.zeros(3)
    for direction in dirs:
        seeds = rad[:, None] * direction
        d = np.max(np.linalg.norm(seeds[:, None, :] - verts[None], axis=2), axis=1)
        d = np.maximum(d, np.abs(1.0 - rad))
        k = int(np.argmin(d))
        if d[k] < best:
            best, best_seed = float(d[k]), seeds[k]
    g = generate_group(symbol)
    sampled = hausdorff_to_sphere_sampled(orbit(g, best_seed).points, samples)
    return DihedralBound(n, best, sampled.total, best_seed)

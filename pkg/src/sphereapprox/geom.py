"""Small 3D primitives: vectors, reflections, orthogonal maps and enclosing balls.

Vectors are plain ``numpy`` arrays of shape ``(3,)`` and orthogonal maps are
``(3, 3)`` arrays. The helpers here validate their inputs and never mutate
them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS_UNIT = 1e-12
EPS_ORTH = 1e-9
EPS_GEO = 1e-9


class PreconditionError(ValueError):
    """An operation was called with arguments outside its domain."""


class DegenerateTriangleError(ValueError):
    """Three points that were supposed to span a triangle are collinear."""


@dataclass(frozen=True)
class Ball:
    center: np.ndarray
    radius: float

    def contains(self, p, tol: float = EPS_GEO) -> bool:
        return float(np.linalg.norm(np.asarray(p, float) - self.center)) <= self.radius + tol


def vector(p) -> np.ndarray:
    v = np.asarray(p, dtype=float).reshape(-1)
    if v.shape != (3,):
        raise PreconditionError(f"expected 3 coordinates, got shape {np.shape(p)}")
    if not np.all(np.isfinite(v)):
        raise PreconditionError(f"non-finite coordinates: {v}")
    return v


def unit_vector(p) -> np.ndarray:
    """Validate that ``p`` has unit norm to within ``EPS_UNIT`` and return it."""
    v = vector(p)
    if abs(np.linalg.norm(v) - 1.0) > EPS_UNIT:
        raise PreconditionError(f"not a unit vector: |{v}| = {np.linalg.norm(v)!r}")
    return v


def normalize(p) -> np.ndarray:
    v = vector(p)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise PreconditionError("cannot normalize the zero vector")
    return v / n


def is_orthogonal(m, tol: float = EPS_ORTH) -> bool:
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        return False
    if np.max(np.abs(m.T @ m - np.eye(3))) > tol:
        return False
    return abs(abs(np.linalg.det(m)) - 1.0) <= tol


def reflect_normal(n) -> np.ndarray:
    """Householder reflection ``I - 2 n n^T`` across the plane orthogonal to ``n``."""
    n = unit_vector(n)
    return np.eye(3) - 2.0 * np.outer(n, n)


def reorthonormalize(m: np.ndarray) -> np.ndarray:
    # One modified Gram-Schmidt pass over the columns; keeps the orientation.
    q = np.array(m, dtype=float)
    for j in range(3):
        for k in range(j):
            q[:, j] -= (q[:, k] @ q[:, j]) * q[:, k]
        q[:, j] /= np.linalg.norm(q[:, j])
    return q


def compose(a, b) -> np.ndarray:
    """Return the product ``a @ b`` (apply ``b`` first), re-orthonormalized."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if not (is_orthogonal(a) and is_orthogonal(b)):
        raise PreconditionError("compose expects orthogonal 3x3 matrices")
    return reorthonormalize(a @ b)


def rotation_angle(m) -> float:
    """Rotation angle of a proper orthogonal map, from its trace."""
    c = (np.trace(m) - 1.0) / 2.0
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def _support_ball(support: list[np.ndarray]) -> Ball:
    # Smallest ball with every support point on its boundary: the circumcenter
    # inside the affine hull of the support.
    a = support[0]
    if len(support) == 1:
        return Ball(a.copy(), 0.0)
    d = np.array([p - a for p in support[1:]])
    gram = d @ d.T
    rhs = 0.5 * np.diag(gram)
    lam = np.linalg.lstsq(gram, rhs, rcond=None)[0]
    center = a + lam @ d
    radius = max(float(np.linalg.norm(p - center)) for p in support)
    return Ball(center, radius)


def _inside(ball: Ball, p: np.ndarray) -> bool:
    scale = max(1.0, ball.radius)
    return float(np.linalg.norm(p - ball.center)) <= ball.radius + 1e-12 * scale


def _welzl(points: list[np.ndarray], support: list[np.ndarray]) -> Ball:
    ball = _support_ball(support)
    if len(support) == 4:
        return ball
    for i, p in enumerate(points):
        if not _inside(ball, p):
            ball = _welzl(points[:i], support + [p])
    return ball


def min_enclosing_ball(points) -> Ball:
    """Smallest closed ball containing every point (Welzl, at most 4 support points).

    The input order is shuffled with a fixed seed, so the result is deterministic.
    """
    pts = [vector(p) for p in points]
    if not pts:
        raise PreconditionError("min_enclosing_ball needs at least one point")
    order = np.random.default_rng(0).permutation(len(pts))
    pts = [pts[i] for i in order]
    ball = Ball(pts[0].copy(), 0.0)
    for i, p in enumerate(pts):
        if not _inside(ball, p):
            ball = _welzl(pts[:i], [p])
    return ball


def triangle_area(a, b, c) -> float:
    a, b, c = vector(a), vector(b), vector(c)
    return 0.5 * float(np.linalg.norm(np.cross(b - a, c - a)))


def circumcenter_in_plane(a, b, c) -> Ball:
    """Chebyshev ball of a triangle.

    Right and obtuse triangles get the midpoint of the longest side; acute
    ones get the intersection of the perpendicular bisectors in their plane.
    """
    a, b, c = vector(a), vector(b), vector(c)
    if triangle_area(a, b, c) <= EPS_GEO:
        raise DegenerateTriangleError(f"collinear triangle {a}, {b}, {c}")
    sides = [(b, c, a), (c, a, b), (a, b, c)]
    # longest side first; its opposite vertex decides acute vs obtuse
    p, q, opp = max(sides, key=lambda s: float(np.linalg.norm(s[0] - s[1])))
    if (p - opp) @ (q - opp) <= 0.0:
        mid = 0.5 * (p + q)
        return Ball(mid, 0.5 * float(np.linalg.norm(p - q)))
    return _support_ball([a, b, c])

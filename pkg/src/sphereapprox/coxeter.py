"""Rank-3 finite reflection groups [m, n] as explicit sets of 3x3 matrices."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import cos, pi, sin, sqrt

import numpy as np

from .geom import EPS_GEO, EPS_ORTH, compose, reflect_normal, unit_vector, vector

DEDUP = 1e-8
MAX_ORDER = 1000

_SYMBOL_RE = re.compile(r"^\s*\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*$")


class InvalidSymbolError(ValueError):
    pass


class ClosureError(RuntimeError):
    """Closing the generators did not produce a finite group under the cap."""


@dataclass(frozen=True, order=True)
class CoxeterSymbol:
    m: int
    n: int

    def __post_init__(self):
        ok = (self.m == 3 and self.n in (3, 4, 5)) or (self.m == 2 and self.n >= 2)
        if not ok:
            raise InvalidSymbolError(
                f"[{self.m},{self.n}] is not admissible: need m = 3 with n in {{3, 4, 5}}, "
                "or m = 2 with n >= 2"
            )

    @classmethod
    def parse(cls, text: str) -> "CoxeterSymbol":
        match = _SYMBOL_RE.match(text)
        if match is None:
            raise InvalidSymbolError(f"cannot parse Coxeter symbol {text!r}; expected e.g. '[3,5]'")
        return cls(int(match.group(1)), int(match.group(2)))

    def __str__(self) -> str:
        return f"[{self.m},{self.n}]"

    @property
    def order(self) -> int:
        """Number of elements of the group, 4n for [2,n]."""
        if self.m == 2:
            return 4 * self.n
        return {3: 24, 4: 48, 5: 120}[self.n]

    @property
    def is_dihedral(self) -> bool:
        return self.m == 2


def as_symbol(symbol) -> CoxeterSymbol:
    if isinstance(symbol, CoxeterSymbol):
        return symbol
    if isinstance(symbol, str):
        return CoxeterSymbol.parse(symbol)
    m, n = symbol
    return CoxeterSymbol(int(m), int(n))


@dataclass(frozen=True)
class GeneratorSet:
    """Unit normals of the three mirrors R1, R2, R3."""

    n1: np.ndarray
    n2: np.ndarray
    n3: np.ndarray

    @property
    def normals(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.n1, self.n2, self.n3)

    @property
    def outward(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Normals pointing out of the fundamental chamber.

        The chamber's dihedral angles are pi/m, pi/n and pi/2 only when the
        pairwise products of its outward normals are non-positive, which
        takes flipping the second mirror's normal.
        """
        return (self.n1, -self.n2, self.n3)

    @property
    def reflections(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return tuple(reflect_normal(n) for n in self.normals)


def build_generators(symbol) -> GeneratorSet:
    """Mirror normals for ``symbol``.

    For [3,n] the first mirror is the XY plane, the third the XZ plane and the
    second meets them at angles pi/3 and pi/n.  For [2,n] the second mirror is
    vertical, at angle pi/n to the XZ plane.
    """
    symbol = as_symbol(symbol)
    n1 = np.array([0.0, 0.0, 1.0])
    n3 = np.array([0.0, 1.0, 0.0])
    if symbol.is_dihedral:
        n2 = np.array([-sin(pi / symbol.n), cos(pi / symbol.n), 0.0])
    else:
        c = cos(pi / symbol.n)
        n2 = np.array([sqrt(1.0 - c * c - 0.25), c, 0.5])
    return GeneratorSet(n1, n2, n3)


@dataclass(frozen=True)
class FiniteGroup:
    """A closed, deduplicated set of orthogonal matrices.

    ``words[k]`` lists generator indices (0, 1, 2 for R1, R2, R3) whose product,
    left to right, equals ``elements[k]``.
    """

    elements: np.ndarray
    generators: GeneratorSet
    symbol: CoxeterSymbol
    words: tuple[tuple[int, ...], ...] = field(default=())
    rotations_only: bool = False

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, m, tol: float = DEDUP) -> int:
        diffs = np.max(np.abs(self.elements - np.asarray(m)), axis=(1, 2))
        k = int(np.argmin(diffs))
        return k if diffs[k] <= tol else -1

    def contains(self, m, tol: float = DEDUP) -> bool:
        return self.index_of(m, tol) >= 0

    @property
    def determinants(self) -> np.ndarray:
        return np.linalg.det(self.elements)


def _close(gens: list[np.ndarray], dedup: float, cap: int) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    elements = [np.eye(3)]
    words: list[tuple[int, ...]] = [()]
    stack = np.eye(3)[None]
    frontier = [0]
    while frontier:
        nxt = []
        for k in frontier:
            for i, r in enumerate(gens):
                cand = compose(r, elements[k])
                if np.min(np.max(np.abs(stack - cand), axis=(1, 2))) <= dedup:
                    continue
                elements.append(cand)
                words.append((i,) + words[k])
                stack = np.concatenate([stack, cand[None]])
                nxt.append(len(elements) - 1)
                if len(elements) > cap:
                    raise ClosureError(
                        f"closure exceeded {cap} elements; generator angles or dedup tolerance are off"
                    )
        frontier = nxt
    return stack, words


def generate_group(gens: GeneratorSet | str | CoxeterSymbol, dedup: float = DEDUP,
                   symbol=None, cap: int = MAX_ORDER) -> FiniteGroup:
    """Breadth-first closure of the three generator reflections.

    ``gens`` may also be a symbol, in which case the generators are built from it.
    """
    if not isinstance(gens, GeneratorSet):
        symbol = as_symbol(gens)
        gens = build_generators(symbol)
    elif symbol is None:
        raise ValueError("a GeneratorSet needs the symbol it realizes")
    symbol = as_symbol(symbol)
    elements, words = _close(list(gens.reflections), dedup, cap)
    return FiniteGroup(elements, gens, symbol, tuple(words))


def _exact_order(m: np.ndarray, expected: int, tol: float) -> bool:
    p = np.eye(3)
    for k in range(1, expected + 1):
        p = m @ p
        at_identity = np.max(np.abs(p - np.eye(3))) <= tol
        if at_identity:
            return k == expected
    return False


def verify_presentation(g: FiniteGroup, tol: float = EPS_ORTH) -> bool:
    """Check the Coxeter relations of ``g.symbol`` on the stored generators.

    Each generator must be an involution and R1R2, R2R3, R1R3 must have exact
    orders m, n and 2.
    """
    r1, r2, r3 = (reflect_normal(n) for n in g.generators.normals)
    eye = np.eye(3)
    for r in (r1, r2, r3):
        if np.max(np.abs(r @ r - eye)) > tol:
            return False
    return (
        _exact_order(r1 @ r2, g.symbol.m, tol)
        and _exact_order(r2 @ r3, g.symbol.n, tol)
        and _exact_order(r1 @ r3, 2, tol)
    )


def rotation_subgroup(g: FiniteGroup) -> FiniteGroup:
    keep = [k for k, d in enumerate(g.determinants) if d > 0]
    words = tuple(g.words[k] for k in keep) if g.words else ()
    return FiniteGroup(g.elements[keep], g.generators, g.symbol, words, rotations_only=True)


def vertex_group(g: FiniteGroup, i: int, j: int, dedup: float = DEDUP) -> np.ndarray:
    """Elements of the subgroup generated by mirrors ``i`` and ``j`` (0-based)."""
    refl = g.generators.reflections
    elements, _ = _close([refl[i], refl[j]], dedup, MAX_ORDER)
    return elements


def _dedup_points(points: np.ndarray, tol: float) -> np.ndarray:
    kept: list[np.ndarray] = []
    for p in points:
        if kept and np.min(np.linalg.norm(np.asarray(kept) - p, axis=1)) <= tol:
            continue
        kept.append(p)
    return np.asarray(kept)


@dataclass(frozen=True)
class Orbit:
    seed: np.ndarray
    points: np.ndarray
    group: FiniteGroup = field(repr=False)

    def __len__(self) -> int:
        return len(self.points)


def orbit(g: FiniteGroup, p, dedup: float = DEDUP) -> Orbit:
    p = vector(p)
    images = g.elements @ p
    return Orbit(p, _dedup_points(images, dedup), g)


def stabilizer_order(g: FiniteGroup, p, dedup: float = DEDUP) -> int:
    p = vector(p)
    return int(np.sum(np.linalg.norm(g.elements @ p - p, axis=1) <= dedup))


def check_generators(gens: GeneratorSet, symbol, tol: float = EPS_GEO) -> bool:
    """Angle conditions between the mirror normals for ``symbol``."""
    symbol = as_symbol(symbol)
    n1, n2, n3 = (unit_vector(n) for n in gens.normals)
    return (
        abs(n1 @ n3) <= tol
        and abs(n1 @ n2 - cos(pi / symbol.m)) <= tol
        and abs(n2 @ n3 - cos(pi / symbol.n)) <= tol
    )

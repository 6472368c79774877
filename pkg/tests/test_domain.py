from math import cos, pi, sin, sqrt

import numpy as np
import pytest

from sphereapprox.approx import chebyshev_center
from sphereapprox.coxeter import CoxeterSymbol, build_generators, generate_group, orbit
from sphereapprox.domain import (
    FundamentalCone,
    UnsupportedGroupError,
    check_dirichlet,
    check_same_side,
    fold_to_domain,
    fundamental_triangle,
    generator_rotations,
    in_fundamental_domain,
)
from sphereapprox.geom import reflect_normal

from .conftest import POLYHEDRAL

A3, B3, H3 = POLYHEDRAL
C5, S5 = cos(pi / 5), sin(pi / 5)
R5 = sqrt(0.75 - C5 ** 2)

# vertices and midpoints in the closed forms printed in the triangles table
TABLE1 = {
    A3: {
        "x": (1 / sqrt(3), -2 / sqrt(6), 0),
        "y": (1 / sqrt(3), 0, -2 / sqrt(6)),
        "m1": ((1 + sqrt(3)) / (2 * sqrt(3)), -1 / sqrt(6), 0),
        "m2": (1 / sqrt(3), -1 / sqrt(6), -1 / sqrt(6)),
        "m3": ((1 + sqrt(3)) / (2 * sqrt(3)), 0, -1 / sqrt(6)),
    },
    B3: {
        "x": (sqrt(2) / sqrt(3), -1 / sqrt(3), 0),
        "y": (1 / sqrt(2), 0, -1 / sqrt(2)),
        "m1": ((sqrt(2) + sqrt(3)) / (2 * sqrt(3)), -1 / (2 * sqrt(3)), 0),
        "m2": ((2 + sqrt(3)) / (2 * sqrt(6)), -1 / (2 * sqrt(3)), -1 / (2 * sqrt(2))),
        "m3": ((1 + sqrt(2)) / (2 * sqrt(2)), 0, -1 / (2 * sqrt(2))),
    },
    H3: {
        "x": tuple(2 / sqrt(3) * np.array([C5, -R5, 0])),
        "y": tuple(1 / S5 * np.array([0.5, 0, -R5])),
        "m1": tuple(1 / sqrt(3) * np.array([C5 + sqrt(3) / 2, -R5, 0])),
        "m3": tuple(1 / (2 * S5) * np.array([0.5 + S5, 0, -R5])),
    },
}


@pytest.mark.parametrize("symbol", POLYHEDRAL)
def test_triangle_matches_table(symbol, triangles):
    tri = triangles[symbol]
    assert np.allclose(tri.z, [1, 0, 0])
    for name, expected in TABLE1[symbol].items():
        assert np.allclose(tri.point(name), expected, atol=1e-12), name


def test_h3_m2_printed_form_disagrees_in_first_coordinate(triangles):
    # The printed factored m2 carries sin(pi/5)/4 where (x+y)/2 has 1/(4 sin(pi/5)).
    tri = triangles[H3]
    printed = R5 / sqrt(3) * np.array([(sqrt(3) * S5 + 4 * C5) / (4 * R5), -1, -sqrt(3) / (2 * S5)])
    assert np.allclose(printed[1:], tri.m2[1:], atol=1e-12)
    assert printed[0] - tri.m2[0] == pytest.approx(S5 / 4 - 1 / (4 * S5), abs=1e-12)
    assert printed[0] - tri.m2[0] == pytest.approx(-0.2784, abs=1e-4)
    assert np.allclose(tri.m2, 0.5 * (tri.x + tri.y))


def test_h3_y_closed_form_from_generator_data(triangles):
    assert np.allclose(triangles[H3].y, 1 / S5 * np.array([0.5, 0, -sqrt(0.75 - C5 ** 2)]))


@pytest.mark.parametrize("symbol", POLYHEDRAL)
def test_vertex_incidence(symbol, triangles):
    tri = triangles[symbol]
    n1, n2, n3 = tri.generators.normals
    for v, (a, b) in ((tri.x, (n1, n2)), (tri.y, (n2, n3)), (tri.z, (n1, n3))):
        assert abs(v @ a) <= 1e-9 and abs(v @ b) <= 1e-9
        assert np.linalg.norm(v) == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("symbol", POLYHEDRAL)
def test_triangle_points_in_cone(symbol, triangles):
    tri = triangles[symbol]
    for name in ("x", "y", "z", "m1", "m2", "m3", "centroid"):
        assert in_fundamental_domain(tri.point(name), tri.cone)


@pytest.mark.parametrize("symbol", POLYHEDRAL)
def test_midpoint_norms(symbol, triangles):
    tri = triangles[symbol]
    c = chebyshev_center(tri).center
    norms = [np.linalg.norm(tri.point(m)) for m in ("m1", "m2", "m3")]
    assert all(n < 1 for n in norms)
    # projections of c onto the three mirror planes
    for n in tri.generators.normals:
        proj = c - (c @ n) * n
        assert np.linalg.norm(c) >= np.linalg.norm(proj) - 1e-12
    assert min(norms) >= np.linalg.norm(c)


def test_cone_dihedral_angles():
    for symbol in POLYHEDRAL + [CoxeterSymbol(2, 5)]:
        o1, o2, o3 = build_generators(symbol).outward
        assert o1 @ o2 == pytest.approx(-cos(pi / symbol.m))
        assert o2 @ o3 == pytest.approx(-cos(pi / symbol.n))
        assert o1 @ o3 == pytest.approx(0, abs=1e-15)


def test_dihedral_symbol_has_no_triangle():
    with pytest.raises(UnsupportedGroupError):
        fundamental_triangle("[2,4]")


class TestMembership:
    def test_origin(self, triangles):
        assert in_fundamental_domain([0, 0, 0], triangles[B3].cone)

    def test_centroid_and_its_negative(self, triangles):
        tri = triangles[B3]
        assert in_fundamental_domain(tri.centroid, tri.cone)
        assert not in_fundamental_domain(-tri.centroid, tri.cone)

    def test_centroid_inner_products(self, triangles):
        tri = triangles[B3]
        n1, n2, n3 = tri.generators.normals
        c = tri.centroid
        assert c @ n1 < 0 and c @ n3 < 0 and c @ n2 > 0


class TestFold:
    def test_already_inside(self, groups, triangles):
        tri = triangles[H3]
        p, h = fold_to_domain(tri.centroid, groups[H3])
        assert np.allclose(p, tri.centroid) and np.allclose(h, np.eye(3))

    def test_cube_group(self):
        g = generate_group("[2,2]")
        p, h = fold_to_domain(np.array([-1, -1, -1]) / 3, g)
        assert np.allclose(np.abs(p), 1 / 3)
        assert FundamentalCone(g.generators).contains(p)
        # exhaustive: exactly one of the 8 images lands in the open cone
        images = g.elements @ (np.array([-1.0, -1.0, -1.0]) / 3)
        inside = [FundamentalCone(g.generators).contains(q) for q in images]
        assert sum(inside) == 1 and np.allclose(images[inside.index(True)], p)

    def test_reflected_centroid(self, groups, triangles):
        g, tri = groups[H3], triangles[H3]
        r = reflect_normal(g.generators.n2)
        p, h = fold_to_domain(r @ tri.centroid, g)
        assert np.allclose(p, tri.centroid)
        assert np.allclose(h @ r @ tri.centroid, tri.centroid)
        hits = [k for k, m in enumerate(g.elements) if np.allclose(m @ r @ tri.centroid, tri.centroid)]
        assert len(hits) == 1 and np.allclose(g.elements[hits[0]], h)

    def test_random_points_land_in_cone(self, groups, rng):
        for g in groups.values():
            cone = FundamentalCone(g.generators)
            for p in rng.normal(size=(200, 3)):
                q, h = fold_to_domain(p, g)
                assert cone.contains(q)
                assert np.allclose(h @ p, q)


@pytest.mark.parametrize("symbol", POLYHEDRAL)
def test_dirichlet(symbol, groups):
    rep = check_dirichlet(groups[symbol], trials=100, seed=0)
    assert rep.ok, rep.summary()
    assert rep.checks == 100 * len(groups[symbol])
    assert rep.worst_margin >= -1e-9


def test_dirichlet_equality_at_vertex(groups, triangles):
    g, tri = groups[H3], triangles[H3]
    d = np.linalg.norm(g.elements @ tri.z - tri.z, axis=1)
    assert np.all(d >= -1e-12)
    assert np.sum(d <= 1e-12) == 4  # stabilizer of z: the vertex group of two perpendicular mirrors


@pytest.mark.parametrize("symbol", POLYHEDRAL)
def test_same_side(symbol, groups):
    rep = check_same_side(groups[symbol], trials=100, seed=0)
    assert rep.ok, rep.summary()


def test_same_side_identity_products_nonnegative(triangles, rng):
    tri = triangles[A3]
    pts = tri.cone.sample(100, rng)
    prods = (pts @ np.array(tri.generators.normals).T)
    assert np.all(prods[:50] * prods[50:] >= 0)


def test_check_reports_violation_for_wrong_cone(groups):
    # feeding the all-nonpositive side of the printed normals is not a fundamental domain
    import dataclasses
    g = groups[B3]
    gens = g.generators
    flipped = dataclasses.replace(gens, n2=-gens.n2)
    bad = dataclasses.replace(g, generators=flipped)
    rep = check_dirichlet(bad, trials=50, seed=1)
    assert not rep.ok and rep.worst_case is not None


class TestDistanceLemmas:
    def test_reflection_moves_apart(self, groups, rng):
        for g in groups.values():
            normals = g.generators.normals
            for _ in range(1000):
                n = normals[rng.integers(3)]
                x, y = rng.normal(size=(2, 3))
                if (x @ n) * (y @ n) < 0:
                    y = y - 2 * (y @ n) * n
                r = reflect_normal(n)
                assert np.linalg.norm(x - y) <= np.linalg.norm(r @ x - y) + 1e-12

    @pytest.mark.parametrize("symbol", POLYHEDRAL)
    def test_generator_rotations_move_apart(self, symbol, groups, rng):
        g = groups[symbol]
        cone = FundamentalCone(g.generators)
        xs = cone.sample(1000, rng, radius=2.0)
        ys = cone.sample(1000, rng, radius=2.0)
        for s in generator_rotations(g.generators):
            lhs = np.linalg.norm(xs @ s.T - ys, axis=1)
            assert np.all(lhs >= np.linalg.norm(xs - ys, axis=1) - 1e-12)


def test_orbit_of_scaled_seed_is_scaled_orbit(groups, triangles, rng):
    g, tri = groups[H3], triangles[H3]
    p = tri.centroid
    base = orbit(g, p).points
    for t in rng.uniform(1e-3, 2.0, size=20):
        assert np.allclose(orbit(g, t * p).points, t * base, atol=1e-12)

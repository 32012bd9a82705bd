import unittest
import math
import sys
import os

import numpy as np

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.cross_ratio import (
    complex_cross_ratio_value,
    cross_ratio_quat,
    is_infinite,
    sphere_inversion,
    sphere_point,
)
from src.curve_analysis import circumsphere
from src.errors import DegenerateConfigurationError, ZigzagSingularityError
from src.insertion import edge_point_quad, insert_complex, insert_quat
from src.quat_core import complex_principal_sqrt, polar

C = 0.4 + 0.9j
# inserted points farther out than this are treated as near infinity in the fuzz tests
FAR = 1e4


def random_quadruples(seed, count):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield [complex(*rng.normal(size=2)) for _ in range(4)]


def generic_quadruples(seed, count, separation=0.05):
    """Random planar quadruples whose closest pair is not much shorter than the farthest."""
    for points in random_quadruples(seed, count):
        distances = [abs(p - q) for i, p in enumerate(points) for q in points[i + 1:]]
        if min(distances) >= separation * max(distances):
            yield points


def embed(z):
    return np.array([z.real, z.imag, 0.0])


class TestInsertComplex(unittest.TestCase):

    def test_parallelogram_gives_diagonal_intersection(self):
        # b - a = d - c
        f = insert_complex(0, 1, C, C + 1)
        self.assertAlmostEqual(f, (1 + C) / 2, places=14)

    def test_defining_equation(self):
        for a, b, c, d in generic_quadruples(1, 10_000):
            f = insert_complex(a, b, c, d)
            if is_infinite(f) or abs(f) > FAR:
                continue
            q = complex_cross_ratio_value(c, a, b, d)
            residual = complex_cross_ratio_value(c, a, b, f) + complex_principal_sqrt(q)
            self.assertLess(abs(residual), 1e-10 * max(1.0, abs(q)))

    def test_concyclic_input_stays_on_circle(self):
        a, b, c, d = (complex(math.cos(t), math.sin(t)) for t in (0.2, 0.9, 1.7, 2.8))
        for f in (insert_complex(a, b, c, d), insert_complex(d, a, b, c)):
            self.assertLess(abs(abs(f) - 1.0), 1e-10)

    def test_moebius_equivariance(self):
        def moebius(z):
            return (2 * z + 1j) / (z + 3 - 1j)

        for a, b, c, d in random_quadruples(5, 100):
            f = insert_complex(a, b, c, d)
            g = insert_complex(*(moebius(p) for p in (a, b, c, d)))
            if is_infinite(f) or is_infinite(g):
                continue
            expected = moebius(f)
            self.assertLess(abs(g - expected), 1e-8 * max(1.0, abs(expected)))

    def test_zigzag_is_rejected(self):
        # c, a, b, d in cyclic order on the unit circle
        with self.assertRaises(ZigzagSingularityError) as ctx:
            insert_complex(1j, -1, 1, -1j)
        self.assertAlmostEqual(complex(ctx.exception.cross_ratio), -1.0)
        self.assertIn("discrete singularities of our polygons", str(ctx.exception))

    def test_coincident_points(self):
        with self.assertRaises(DegenerateConfigurationError):
            insert_complex(0, 0, 1, 2)


class TestInsertQuat(unittest.TestCase):

    def test_planar_square_matches_complex(self):
        square = (0j, 1 + 0j, 1 + 1j, 1j)
        expected = insert_complex(*square)
        np.testing.assert_allclose(insert_quat(*(embed(p) for p in square)), embed(expected), atol=1e-14)

    def test_xy_plane_matches_complex(self):
        for points in random_quadruples(9, 50):
            expected = insert_complex(*points)
            result = insert_quat(*(embed(p) for p in points))
            if is_infinite(expected):
                continue
            scale = max(1.0, abs(expected))
            np.testing.assert_allclose(result, embed(expected), atol=1e-9 * scale)

    def test_result_on_circumsphere(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            points = [rng.normal(size=3) for _ in range(4)]
            f = insert_quat(*points)
            if is_infinite(f):
                continue
            sphere = circumsphere(*points)
            self.assertLess(sphere.distance(f), 1e-9 * max(1.0, sphere.radius))

    def test_agrees_with_sphere_parametrization(self):
        a, b, c, d = (np.array(p) for p in ((1.0, 0.2, -0.3), (-0.4, 1.1, 0.5), (0.3, -0.8, 1.2), (0.9, 0.7, 0.8)))
        q = cross_ratio_quat(c, a, b, d).value
        n, phi, _ = polar(q)
        lam = -math.sqrt(n) * math.cos(phi / 2) / q.re
        mu = -math.sqrt(n) * math.sin(phi / 2) / q.im_norm()
        np.testing.assert_allclose(insert_quat(a, b, c, d), sphere_point(c, a, b, d, lam, mu), atol=1e-10)

    def test_zigzag_is_rejected(self):
        with self.assertRaises(ZigzagSingularityError):
            insert_quat(embed(1j), embed(-1 + 0j), embed(1 + 0j), embed(-1j))


class TestEdgePointQuad(unittest.TestCase):

    def test_p_points_are_harmonic(self):
        checked = 0
        for a, b, c, d in generic_quadruples(42, 10_000):
            try:
                quad = edge_point_quad(a, b, c, d)
            except ZigzagSingularityError:
                continue
            if not quad.is_finite() or max(abs(p) for p in quad.points()) > FAR:
                continue
            checked += 1
            p_ab, p_bc, p_cd, p_da = quad.points()
            self.assertLess(abs(complex_cross_ratio_value(p_ab, p_bc, p_cd, p_da) + 1), 1e-8)
            self.assertLess(abs(complex_cross_ratio_value(a, p_ab, b, p_cd) + 1), 1e-8)
            self.assertLess(abs(complex_cross_ratio_value(b, p_bc, c, p_da) + 1), 1e-8)
            self.assertLess(abs(complex_cross_ratio_value(c, p_cd, d, p_ab) + 1), 1e-8)
            self.assertLess(abs(complex_cross_ratio_value(d, p_da, a, p_bc) + 1), 1e-8)
        self.assertGreater(checked, 5000)

    def test_equivariance_under_inversion(self):
        center, radius = 0.3 - 2.1j, 1.3
        for points in random_quadruples(77, 100):
            quad = edge_point_quad(*points)
            image = edge_point_quad(*(sphere_inversion(p, center, radius) for p in points))
            for p, q in zip(quad.points(), image.points()):
                if is_infinite(p) or is_infinite(q):
                    continue
                expected = sphere_inversion(p, center, radius)
                self.assertLess(abs(q - expected), 1e-7 * max(1.0, abs(expected)))

    def test_parallelogram_square(self):
        # b - a = c - d: the four p-points form a square
        quad = edge_point_quad(0j, 1 + 0j, C + 1, C)
        p = quad.points()
        sides = [abs(p[k] - p[(k + 1) % 4]) for k in range(4)]
        for side in sides[1:]:
            self.assertAlmostEqual(side, sides[0], delta=1e-10)
        self.assertAlmostEqual(abs(p[0] - p[2]), abs(p[1] - p[3]), delta=1e-10)

    def test_parallelogram_point_at_infinity(self):
        # b - a = d - c
        quad = edge_point_quad(0j, 1 + 0j, C, C + 1)
        self.assertEqual(quad.infinite_labels(), ["p_da"])
        self.assertFalse(quad.is_finite())
        self.assertAlmostEqual(quad.p_bc, (1 + C) / 2, places=14)

    def test_cusp_point_at_infinity(self):
        quad = edge_point_quad(-1 + 0j, 1.5 + 1j, -0.5 + 1j, 1 + 0j)
        self.assertIn("p_ab", quad.infinite_labels())

    def test_zigzag_names_the_permutation(self):
        with self.assertRaises(ZigzagSingularityError) as ctx:
            edge_point_quad(1j, -1 + 0j, 1 + 0j, -1j)
        self.assertEqual(ctx.exception.permutation, "p_bc = f(a, b, c, d)")

    def test_space_quad_on_circumsphere(self):
        points = [np.array(p) for p in ((1.0, 0.2, -0.3), (-0.4, 1.1, 0.5), (0.3, -0.8, 1.2), (0.9, 0.7, 0.8))]
        quad = edge_point_quad(*points)
        sphere = circumsphere(*points)
        for p in quad.points():
            self.assertLess(sphere.distance(p), 1e-9 * sphere.radius)
        # the four points are concyclic
        self.assertTrue(cross_ratio_quat(*quad.points()).is_real())


if __name__ == '__main__':
    unittest.main()

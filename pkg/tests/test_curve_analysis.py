import unittest
import math
import sys
import os

import numpy as np

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.config import ToleranceConfig
from src.curve_analysis import (
    CIRCLE_FIT_NOTE,
    Circle,
    DiscreteCurve,
    Line,
    analyze_edge,
    circle_through_quad,
    circumcenter_2d,
    circumcenter_3d,
    circumsphere,
    curvature_circle,
    discrete_curvature,
    discrete_kappa_prime,
    discrete_torsion,
    frenet_frame,
    is_arclength_edge,
    osculating_sphere,
)
from src.cross_ratio import sphere_inversion
from src.errors import (
    DegenerateCircumcircleError,
    DegenerateConfigurationError,
    DegenerateSphereError,
    FlatFrameError,
    InsufficientNeighborhoodError,
    UndefinedQuantityError,
    ZigzagSingularityError,
)
from src.insertion import EdgePointQuad
from src.smooth_reference import circle, get_curve, sample, sample_full

HELIX_KAPPA = 16.0 / 16.25
HELIX_TAU = -2.0 / 16.25


def polygon_on_circle(radius, angles, center=(0.0, 0.0)):
    return np.array([[center[0] + radius * math.cos(t), center[1] + radius * math.sin(t)] for t in angles])


class TestDiscreteCurve(unittest.TestCase):

    def setUp(self):
        self.square = DiscreteCurve([(0, 0), (1, 0), (1, 1), (0, 1), (-1, 1)], name="square")

    def test_shape_validation(self):
        with self.assertRaises(DegenerateConfigurationError):
            DiscreteCurve([(0, 0), (1, 0), (2, 0)])
        with self.assertRaises(DegenerateConfigurationError):
            DiscreteCurve([(0, 0, 0, 0)] * 4)

    def test_open_curve_neighborhoods(self):
        self.assertEqual(self.square.interior_edges(), [1, 2])
        self.assertEqual(self.square.point(1), 1 + 0j)
        with self.assertRaises(InsufficientNeighborhoodError):
            self.square.stencil(0)
        with self.assertRaises(InsufficientNeighborhoodError):
            self.square.point(5)

    def test_closed_curve_wraps(self):
        closed = DiscreteCurve(self.square.vertices, closed=True)
        self.assertEqual(closed.interior_edges(), [0, 1, 2, 3, 4])
        self.assertEqual(closed.stencil(0), (-1 + 1j, 0j, 1 + 0j, 1 + 1j))
        self.assertEqual(closed.point(-1), closed.point(4))

    def test_space_points_are_vectors(self):
        curve = DiscreteCurve([(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)])
        self.assertEqual(curve.dim, 3)
        self.assertFalse(curve.is_planar)
        np.testing.assert_array_equal(curve.point(2), [1, 1, 0])

    def test_distinctness_violations(self):
        curve = DiscreteCurve([(0, 0), (1, 0), (2, 0), (1, 0), (3, 1)])
        self.assertIn((1, 3), curve.distinctness_violations())
        self.assertEqual(self.square.distinctness_violations(), [])

    def test_edge_parameter(self):
        curve = DiscreteCurve(self.square.vertices, parameters=[0.0, 0.2, 0.4, 0.6, 0.8])
        self.assertAlmostEqual(curve.edge_parameter(1), 0.3)
        with self.assertRaises(UndefinedQuantityError):
            self.square.edge_parameter(1)


class TestCircumcenters(unittest.TestCase):

    def test_equilateral_2d(self):
        a, b, c = (complex(math.cos(t), math.sin(t)) for t in (0.0, 2 * math.pi / 3, 4 * math.pi / 3))
        self.assertAlmostEqual(circumcenter_2d(a, b, c), 0j, places=14)

    def test_right_triangle(self):
        self.assertAlmostEqual(circumcenter_2d(0, 2, 2j), 1 + 1j, places=14)

    def test_random_triangles_equidistant(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            a, b, c = (complex(*rng.normal(size=2)) for _ in range(3))
            m = circumcenter_2d(a, b, c)
            r = abs(a - m)
            self.assertLess(abs(abs(b - m) - r), 1e-12 * max(1.0, r) * 10)
            self.assertLess(abs(abs(c - m) - r), 1e-12 * max(1.0, r) * 10)

            A, B, Cv = (rng.normal(size=3) for _ in range(3))
            m3 = circumcenter_3d(A, B, Cv)
            r3 = np.linalg.norm(A - m3)
            self.assertLess(abs(np.linalg.norm(B - m3) - r3), 1e-11 * max(1.0, r3))
            self.assertLess(abs(np.linalg.norm(Cv - m3) - r3), 1e-11 * max(1.0, r3))

    def test_tilted_equilateral_3d(self):
        e1 = np.array([1.0, 0.0, 0.0])
        e2 = np.array([0.0, math.cos(0.4), math.sin(0.4)])
        offset = np.array([1.0, 2.0, 3.0])
        points = [offset + math.cos(t) * e1 + math.sin(t) * e2 for t in (0.0, 2 * math.pi / 3, 4 * math.pi / 3)]
        np.testing.assert_allclose(circumcenter_3d(*points), offset, atol=1e-14)

    def test_xy_triangle_matches_2d(self):
        a, b, c = 0.3 + 0.1j, -1.2 + 0.8j, 0.5 - 2.0j
        expected = circumcenter_2d(a, b, c)
        result = circumcenter_3d(*((p.real, p.imag, 0.0) for p in (a, b, c)))
        np.testing.assert_allclose(result, [expected.real, expected.imag, 0.0], atol=1e-12)

    def test_collinear_carries_line(self):
        with self.assertRaises(DegenerateCircumcircleError) as ctx:
            circumcenter_2d(0, 1, 3)
        np.testing.assert_allclose(np.abs(ctx.exception.direction), [1.0, 0.0, 0.0])
        with self.assertRaises(DegenerateCircumcircleError):
            circumcenter_3d((0, 0, 0), (1, 1, 1), (2, 2, 2))


class TestCurvatureCircle(unittest.TestCase):

    def test_circle_is_exact(self):
        for radius in (0.5, 1.0, 2.0):
            curve = sample_full(circle(radius), 0.1)
            for i in curve.interior_edges():
                kappa = discrete_curvature(curve, i)
                self.assertLess(abs(kappa - 1.0 / radius), 1e-10 / radius)
            fitted = curvature_circle(curve, 7)
            self.assertIsInstance(fitted, Circle)
            np.testing.assert_allclose(fitted.center, 0.0, atol=1e-10 * radius)
            self.assertAlmostEqual(fitted.radius, radius, delta=1e-10 * radius)

    def test_unevenly_sampled_circle_is_exact(self):
        vertices = polygon_on_circle(3.0, [0.0, 0.1, 0.5, 0.6, 1.4, 2.0], center=(1.0, -2.0))
        curve = DiscreteCurve(vertices)
        for i in curve.interior_edges():
            self.assertAlmostEqual(discrete_curvature(curve, i), 1.0 / 3.0, delta=1e-10)
            np.testing.assert_allclose(curvature_circle(curve, i).center, [1.0, -2.0, 0.0], atol=1e-9)

    def test_straight_polygon_is_line(self):
        curve = DiscreteCurve([(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)])
        line = curvature_circle(curve, 1)
        self.assertIsInstance(line, Line)
        self.assertEqual(discrete_curvature(curve, 1), 0.0)
        self.assertAlmostEqual(line.distance((7.0, 0.0)), 0.0)
        with self.assertRaises(FlatFrameError) as ctx:
            frenet_frame(curve, 1)
        np.testing.assert_allclose(ctx.exception.tangent, [1.0, 0.0, 0.0])

    def test_parallelogram_degenerates_to_line(self):
        c = 0.4 + 0.9j
        curve = DiscreteCurve([(0, 0), (1, 0), (c.real, c.imag), (c.real + 1, c.imag)])
        self.assertIsInstance(curvature_circle(curve, 1), Line)
        analysis = analyze_edge(curve, 1)
        self.assertEqual(analysis.kappa, 0.0)
        self.assertIn("p_da at infinity", analysis.notes)

    def test_cusp_degenerates_to_line(self):
        curve = DiscreteCurve([(-1, 0), (1.5, 1), (-0.5, 1), (1, 0)])
        self.assertIsInstance(curvature_circle(curve, 1), Line)
        self.assertEqual(discrete_curvature(curve, 1), 0.0)

    def test_zigzag_edge(self):
        curve = DiscreteCurve(polygon_on_circle(1.0, [math.pi / 2, math.pi, 0.0, -math.pi / 2]))
        with self.assertRaises(ZigzagSingularityError):
            curvature_circle(curve, 1)

    def test_boundary_edge(self):
        curve = sample_full(circle(1.0), 0.1)
        with self.assertRaises(InsufficientNeighborhoodError):
            discrete_curvature(curve, 0)

    def test_space_circle_lies_on_osculating_sphere(self):
        curve = sample(get_curve("trefoil"), 0.8, 0.05)
        fitted = curvature_circle(curve, 1)
        sphere = osculating_sphere(curve, 1)
        for point in fitted.points(np.linspace(0.0, 2 * math.pi, 7)):
            self.assertLess(sphere.distance(point), 1e-9 * sphere.radius)

    def test_moebius_invariance_of_circle(self):
        rng = np.random.default_rng(99)
        checked = 0
        for _ in range(1000):
            points = [complex(*rng.normal(size=2)) for _ in range(4)]
            center, radius = complex(*(3.0 * rng.normal(size=2))), rng.uniform(0.5, 3.0)
            try:
                fitted = curvature_circle(DiscreteCurve([(p.real, p.imag) for p in points]), 1)
            except (ZigzagSingularityError, DegenerateConfigurationError):
                continue
            if not isinstance(fitted, Circle):
                continue
            # inversion centers on or next to the circle or the stencil are ill-conditioned
            if (fitted.distance(center) < 0.05 * fitted.radius
                    or min(abs(p - center) for p in points) < 0.05):
                continue
            image = [sphere_inversion(p, center, radius) for p in points]
            image_circle = curvature_circle(DiscreteCurve([(p.real, p.imag) for p in image]), 1)
            self.assertIsInstance(image_circle, Circle)
            for point in fitted.points([0.3, 2.0, 4.1]):
                mapped = sphere_inversion(complex(point[0], point[1]), center, radius)
                self.assertLess(image_circle.distance(mapped), 1e-7 * max(1.0, image_circle.radius))
            checked += 1
        self.assertGreater(checked, 500)

    def test_circle_separates_the_stencil(self):
        rng = np.random.default_rng(31)
        checked = 0
        samples = [sample_full(get_curve("epitrochoid"), 0.05), sample_full(get_curve("logspiral"), 0.05)]
        stencils = [curve.stencil(i) for curve in samples for i in curve.interior_edges()[::7]]
        stencils += [tuple(complex(*rng.normal(size=2)) for _ in range(4)) for _ in range(1000)]
        for stencil in stencils:
            try:
                fitted = curvature_circle(DiscreteCurve([(p.real, p.imag) for p in stencil]), 1)
            except (ZigzagSingularityError, DegenerateConfigurationError):
                continue
            if not isinstance(fitted, Circle):
                continue
            center = complex(fitted.center[0], fitted.center[1])
            offsets = [abs(p - center) - fitted.radius for p in stencil]
            if min(abs(o) for o in offsets) < 1e-9 * fitted.radius:
                continue
            outside = [o > 0 for o in offsets]
            # g[i-1], g[i+1] on one side and g[i], g[i+2] on the other
            self.assertEqual(outside[0], outside[2])
            self.assertEqual(outside[1], outside[3])
            self.assertNotEqual(outside[0], outside[1])
            checked += 1
        self.assertGreater(checked, 500)

    def test_fit_residual_of_non_concyclic_points(self):
        quad = EdgePointQuad(1 + 0j, 1j, -1 + 0j, -0.5j)
        with self.assertLogs("src.curve_analysis", level="WARNING") as logs:
            fitted = circle_through_quad(quad, planar=True)
        self.assertGreater(fitted.fit_residual, ToleranceConfig.CIRCLE_FIT_RESIDUAL)
        self.assertIn("off the curvature circle", logs.output[0])

    def test_fit_residual_of_sampled_curve_is_small(self):
        curve = sample_full(get_curve("trefoil"), 0.05)
        for i in curve.interior_edges()[::9]:
            analysis = analyze_edge(curve, i)
            self.assertLess(analysis.circle.fit_residual, ToleranceConfig.CIRCLE_FIT_RESIDUAL)
            self.assertFalse(any(note.startswith(CIRCLE_FIT_NOTE) for note in analysis.notes))


class TestFrameAndTorsion(unittest.TestCase):

    def test_planar_frame(self):
        curve = sample_full(circle(2.0), 0.1)
        frame = frenet_frame(curve, 5)
        quad_circle = curvature_circle(curve, 5)
        self.assertAlmostEqual(np.dot(frame.T, frame.N), 0.0, places=12)
        np.testing.assert_allclose(frame.B, [0.0, 0.0, 1.0], atol=1e-12)
        # counterclockwise sampling: N points inward and T along the edge
        chord = curve.vertices[6] - curve.vertices[5]
        self.assertGreater(np.dot(frame.T[:2], chord), 0.0)
        np.testing.assert_allclose(quad_circle.center, 0.0, atol=1e-10)

    def test_frame_is_orthonormal(self):
        curve = sample_full(get_curve("trefoil"), 0.05)
        for i in curve.interior_edges()[::10]:
            frame = frenet_frame(curve, i)
            np.testing.assert_allclose(frame.as_matrix() @ frame.as_matrix().T, np.eye(3), atol=1e-10)
            np.testing.assert_allclose(np.cross(frame.T, frame.N), frame.B, atol=1e-15)

    def test_planar_torsion_is_zero(self):
        curve = sample_full(get_curve("epitrochoid"), 0.05)
        for i in curve.interior_edges():
            self.assertEqual(discrete_torsion(curve, i), 0.0)

    def test_plane_curve_in_space_has_zero_torsion(self):
        e1 = np.array([1.0, 0.0, 0.0])
        e2 = np.array([0.0, math.cos(0.6), math.sin(0.6)])
        vertices = [math.cos(t) * e1 + 2.0 * math.sin(t) * e2 for t in np.linspace(0.0, 1.5, 8)]
        curve = DiscreteCurve(vertices)
        kappas = [discrete_curvature(curve, i) for i in curve.interior_edges()]
        for i in curve.interior_edges():
            self.assertLess(abs(discrete_torsion(curve, i)), 1e-10 * max(kappas))

    def test_helix_spot_values(self):
        curve = sample(get_curve("helix"), 1.0, 1e-3)
        self.assertLess(abs(discrete_curvature(curve, 1) - HELIX_KAPPA), 1e-4)
        self.assertLess(abs(discrete_torsion(curve, 1) - HELIX_TAU), 1e-3)

    def test_torsion_undefined_on_straight_space_segment(self):
        curve = DiscreteCurve([(0, 0, 0), (1, 1, 1), (2, 2, 2), (3, 3, 3)])
        with self.assertRaises(UndefinedQuantityError):
            discrete_torsion(curve, 1)


class TestSpheresAndArclength(unittest.TestCase):

    def test_circumsphere(self):
        points = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, -1)]
        sphere = circumsphere(*points)
        np.testing.assert_allclose(sphere.center, 0.0, atol=1e-15)
        self.assertAlmostEqual(sphere.radius, 1.0)

    def test_coplanar_points_give_plane(self):
        with self.assertRaises(DegenerateSphereError) as ctx:
            circumsphere((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1.5, 0))
        np.testing.assert_allclose(np.abs(ctx.exception.normal), [0, 0, 1])
        self.assertEqual(ctx.exception.radius, float("inf"))

    def test_viviani_osculating_sphere(self):
        # Viviani's curve lies on the sphere of radius 2a = 10 about the origin
        curve = sample(get_curve("viviani"), 0.5, 0.05)
        sphere = osculating_sphere(curve, 1)
        np.testing.assert_allclose(sphere.center, 0.0, atol=1e-7)
        self.assertAlmostEqual(sphere.radius, 10.0, delta=1e-7)

    def test_planar_curve_has_no_osculating_sphere(self):
        with self.assertRaises(DegenerateSphereError):
            osculating_sphere(sample_full(circle(1.0), 0.1), 3)
        with self.assertRaises(UndefinedQuantityError):
            discrete_kappa_prime(sample_full(circle(1.0), 0.1), 3)

    def test_helix_kappa_prime_vanishes(self):
        curve = sample(get_curve("helix"), 1.0, 0.01)
        self.assertLess(abs(discrete_kappa_prime(curve, 1)), 1e-4)

    def test_arclength_criterion(self):
        uniform = sample_full(circle(1.5), 0.1)
        self.assertTrue(is_arclength_edge(uniform, 4))
        uneven = DiscreteCurve(polygon_on_circle(1.5, [0.0, 0.1, 0.5, 0.6, 1.4]))
        self.assertFalse(is_arclength_edge(uneven, 2))
        straight = DiscreteCurve([(0, 0), (1, 0), (2, 0), (3, 0)])
        self.assertFalse(is_arclength_edge(straight, 1))

    def test_analyze_edge_space_curve(self):
        curve = sample(get_curve("trefoil"), 1.3, 0.02)
        analysis = analyze_edge(curve, 1)
        self.assertIsInstance(analysis.circle, Circle)
        self.assertIsNotNone(analysis.frame)
        self.assertIsNotNone(analysis.tau)
        self.assertIsNotNone(analysis.sphere)
        self.assertIsNotNone(analysis.kappa_prime)
        record = analysis.to_record()
        self.assertEqual(record["circle_kind"], "circle")
        self.assertEqual(len(record["T"].split()), 3)
        self.assertEqual(record["notes"], "")

    def test_analyze_edge_straight(self):
        curve = DiscreteCurve([(0, 0), (1, 0), (2, 0), (3, 0)])
        analysis = analyze_edge(curve, 1)
        self.assertEqual(analysis.kappa, 0.0)
        self.assertEqual(analysis.tau, 0.0)
        self.assertIsNone(analysis.frame)
        self.assertIn("flat: curvature circle is a line", analysis.notes)
        self.assertEqual(analysis.to_record()["radius"], float("inf"))


if __name__ == '__main__':
    unittest.main()

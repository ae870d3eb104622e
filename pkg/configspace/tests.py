import math
from itertools import product
from unittest import TestCase as RegularTestCase

import numpy as np

from graphs.points import CENTER, GraphPoint, point
from guidepath.exceptions import ConfigError, GrammarError

from .configs import (
    Config, make_config, cell_of, square, fin, X_BELOW, Y_BELOW, product_distance, config_array, product_distances,
    distance_to_polyline, polyline_hausdorff, separation)
from .disc import DiscPoint, parity, to_disc, from_disc, polyline_from_xy
from .grammar import (
    A, B, AB, SYMBOLS, parse_symbol, parse_word, format_symbol, docking_symbol, boundary_angle, zone_of, visit_symbol,
    is_monotone, position, monotone_words)
from .winding import (
    winding_number, gap_angles, wd_cost, optimal_winding_class, WINDING_ZERO, WINDING_PLUS_MINUS_ONE,
    winding_class_costs, brute_force_agrees, cheapest_cycles, search_grid)


def c(x, y):
    return Config(point(*x) if x is not None else CENTER, point(*y) if y is not None else CENTER)


def random_square_config(rng):
    i, j = rng.choice([1, 2, 3], size=2, replace=False)
    nu_x, nu_y = rng.uniform(0.01, 1.0, size=2)
    return Config(point(int(i), nu_x), point(int(j), nu_y))


def circle(n, r=1.0, clockwise=False):
    thetas = np.linspace(0.0, 2 * math.pi, n + 1)
    if clockwise:
        thetas = -thetas
    return np.column_stack([np.full(n + 1, r), np.mod(thetas, 2 * math.pi)])


def arc(r, start, end, n=50):
    return np.column_stack([np.full(n + 1, r), np.linspace(start, end, n + 1)])


def assertConfigAlmostEqual(testcase, expected, actual, places=9):
    testcase.assertEqual(expected.x.edge, actual.x.edge)
    testcase.assertEqual(expected.y.edge, actual.y.edge)
    testcase.assertAlmostEqual(expected.x.value, actual.x.value, places=places)
    testcase.assertAlmostEqual(expected.y.value, actual.y.value, places=places)


class CellTestCase(RegularTestCase):

    def test_distinct_edges(self):
        self.assertEqual(square(1, 2), cell_of(c((1, 0.5), (2, 0.5))))

    def test_same_edge(self):
        self.assertEqual(fin(1, X_BELOW), cell_of(c((1, 0.2), (1, 0.6))))
        self.assertEqual(fin(3, Y_BELOW), cell_of(c((3, 0.9), (3, 0.6))))

    def test_seam_tie_break(self):
        self.assertEqual(square(1, 3), cell_of(c(None, (3, 0.4))))
        self.assertEqual(square(2, 1), cell_of(c(None, (1, 0.7))))
        self.assertEqual(square(1, 2), cell_of(c((1, 0.5), None)))

    def test_seam_tie_break_matches_disc_wedges(self):
        # the cell of a seam configuration is the wedge [n pi/3, (n+1) pi/3) that its angle starts
        wedges = [(1, 2), (3, 2), (3, 1), (2, 1), (2, 3), (1, 3)]
        for k in (1, 2, 3):
            for config in (c(None, (k, 0.5)), c((k, 0.5), None)):
                n = int(round(to_disc(config).theta / (math.pi / 3))) % 6
                self.assertEqual(square(*wedges[n]), cell_of(config))

    def test_guard(self):
        with self.assertRaises(ConfigError):
            make_config(GraphPoint(1, 0.5), GraphPoint(1, 0.51))
        make_config(GraphPoint(1, 0.5), GraphPoint(1, 0.53))
        make_config(GraphPoint(1, 0.01), GraphPoint(2, 0.01))

    def test_both_at_center(self):
        with self.assertRaises(ConfigError):
            make_config(CENTER, GraphPoint(2, 0.0))

    def test_separation(self):
        self.assertAlmostEqual(0.4, separation(c((1, 0.2), (1, 0.6))))
        self.assertAlmostEqual(0.8, separation(c((1, 0.2), (2, 0.6))))


class ParityTestCase(RegularTestCase):

    def test_examples(self):
        self.assertEqual(1, parity(0))
        self.assertEqual(-1, parity(math.pi / 4))
        self.assertEqual(1, parity(math.pi / 2))

    def test_constant_between_corners(self):
        # it flips at the corners (odd multiples of pi/6) and not across the seam rays
        for n in range(12):
            expected = 1 if ((n + 1) // 2) % 2 == 0 else -1
            self.assertEqual(expected, parity(n * math.pi / 6 + 0.01))
            self.assertEqual(expected, parity((n + 1) * math.pi / 6 - 0.01))


class DiscTestCase(RegularTestCase):

    def test_to_disc(self):
        d = to_disc(c((1, 0.6), (2, 0.4)))
        self.assertAlmostEqual(2 / 3 * math.atan(0.4 / 0.6), d.theta, places=12)
        self.assertAlmostEqual(0.39197, d.theta, places=5)
        self.assertEqual(0.6, d.r)

    def test_to_disc_corner_line(self):
        d = to_disc(c((1, 0.5), (2, 0.5)))
        self.assertAlmostEqual(math.pi / 6, d.theta, places=12)
        self.assertEqual(0.5, d.r)

    def test_to_disc_x_at_center(self):
        d = to_disc(c(None, (1, 0.7)))
        self.assertAlmostEqual(math.pi, d.theta, places=12)
        self.assertEqual(0.7, d.r)
        assertConfigAlmostEqual(self, c(None, (1, 0.7)), from_disc(d))

    def test_to_disc_fin(self):
        with self.assertRaises(ConfigError):
            to_disc(c((1, 0.2), (1, 0.6)))

    def test_from_disc(self):
        assertConfigAlmostEqual(self, c((1, 0.6), (2, 0.4)), from_disc(DiscPoint(0.6, 2 / 3 * math.atan(0.4 / 0.6))))

        self.assertEqual(c((1, 0.5), None), from_disc(DiscPoint(0.5, 0.0)))

        corner = from_disc(DiscPoint(1.0, math.pi / 6))
        self.assertEqual((1, 2), (corner.x.edge, corner.y.edge))
        self.assertAlmostEqual(1.0, corner.x.value, places=12)
        self.assertAlmostEqual(1.0, corner.y.value, places=12)

    def test_from_disc_radius(self):
        with self.assertRaises(ConfigError):
            from_disc(DiscPoint(0.0, 1.0))
        with self.assertRaises(ConfigError):
            from_disc(DiscPoint(1.5, 1.0))

    def test_round_trip(self):
        rng = np.random.default_rng(10)
        for _ in range(10000):
            config = random_square_config(rng)
            d = to_disc(config)
            assertConfigAlmostEqual(self, config, from_disc(d))

            d = DiscPoint(rng.uniform(0.01, 1.0), rng.uniform(0, 2 * math.pi))
            back = to_disc(from_disc(d))
            self.assertAlmostEqual(d.r, back.r, places=9)
            self.assertAlmostEqual(0.0, math.remainder(d.theta - back.theta, 2 * math.pi), places=9)

    def test_seams_and_boundary(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            k = int(rng.integers(1, 4))
            nu = rng.uniform(0.05, 1.0)
            for config in (c(None, (k, nu)), c((k, nu), None)):
                theta = to_disc(config).theta
                self.assertAlmostEqual(0.0, math.remainder(theta, math.pi / 3), places=12)

            config = random_square_config(rng)
            docked = Config(config.x._replace(value=1.0), config.y)
            self.assertEqual(1.0, to_disc(docked).r)


class GrammarTestCase(RegularTestCase):

    def test_twelve_symbols(self):
        self.assertEqual(12, len(set(SYMBOLS)))

    def test_parse(self):
        self.assertEqual(AB(3, 2), parse_symbol("AB32"))
        self.assertEqual(A(1), parse_symbol("a1"))
        self.assertEqual([A(1), B(2), A(3)], parse_word("A1, B2 A3"))
        self.assertEqual("AB13", format_symbol(AB(1, 3)))

    def test_parse_errors(self):
        for token in ["AB11", "A4", "C1", "A12", "AB1", ""]:
            with self.assertRaises(GrammarError):
                parse_symbol(token)
        with self.assertRaises(GrammarError):
            parse_word([])

    def test_docking_symbol(self):
        self.assertEqual(A(1), docking_symbol(c((1, 1.0), (2, 0.3)), 0.05))
        self.assertEqual(AB(3, 2), docking_symbol(c((3, 0.99), (2, 0.98)), 0.05))
        self.assertEqual(None, docking_symbol(c((1, 0.5), (2, 0.5)), 0.05))
        self.assertEqual(B(2), docking_symbol(c(None, (2, 0.97)), 0.05))

    def test_boundary_angle(self):
        zone = boundary_angle(AB(1, 2), 0.0)
        self.assertAlmostEqual(math.pi / 6, zone.center)
        self.assertAlmostEqual(0.0, zone.half_width)

        zone = boundary_angle(A(1), 0.05)
        self.assertEqual(0.0, zone.center)
        self.assertEqual(1, parity(zone.half_width * 0.99))
        self.assertEqual(1, parity(2 * math.pi - zone.half_width * 0.99))

    def test_zones_partition_circle(self):
        tol = 0.05
        self.assertAlmostEqual(2 * math.pi, sum(2 * boundary_angle(s, tol).half_width for s in SYMBOLS), places=12)

        seen = []
        for theta in np.linspace(0.0, 2 * math.pi, 20000, endpoint=False):
            s = zone_of(theta, tol)
            zone = boundary_angle(s, tol)
            self.assertLessEqual(abs(math.remainder(theta - zone.center, 2 * math.pi)), zone.half_width + 1e-12)
            if not seen or seen[-1] != s:
                seen.append(s)
        self.assertEqual(SYMBOLS + [A(1)], seen)

    def test_zones_agree_with_docking_on_the_boundary(self):
        tol = 0.05
        for theta in np.linspace(0.0, 2 * math.pi, 2000, endpoint=False):
            s = zone_of(theta, tol)
            zone = boundary_angle(s, tol)
            if abs(abs(math.remainder(theta - zone.center, 2 * math.pi)) - zone.half_width) < 1e-6:
                continue
            config = from_disc(DiscPoint(1.0, theta))
            self.assertEqual(s, docking_symbol(config, tol))
            self.assertEqual(s, visit_symbol(config, tol))

    def test_visit_symbol_off_the_boundary(self):
        self.assertEqual(None, visit_symbol(c((1, 0.5), (2, 0.5)), 0.05))
        self.assertEqual(B(2), visit_symbol(c((2, 0.3), (2, 0.96)), 0.05))

    def test_corner_approach_reads_as_corner(self):
        # near r = 1 just off the corner, docking_symbol says A1 while the visit is to AB12
        config = from_disc(DiscPoint(0.97, math.pi / 6 - 0.01))
        self.assertEqual(A(1), docking_symbol(config, 0.05))
        self.assertEqual(AB(1, 2), visit_symbol(config, 0.05))


class MonotoneTestCase(RegularTestCase):

    def test_examples(self):
        self.assertTrue(is_monotone([A(1), B(2), A(3)]))
        self.assertFalse(is_monotone([A(1), A(3), B(2)]))
        self.assertTrue(is_monotone([A(1)]))

    def test_orientation(self):
        self.assertTrue(is_monotone([A(1), A(3), B(2)], either_orientation=True))
        self.assertFalse(is_monotone([A(1), B(2), A(1), B(2)], either_orientation=True))

    def test_repeats(self):
        self.assertFalse(is_monotone([A(1), A(1)]))
        self.assertTrue(is_monotone([A(1), B(1)]))

    def test_brute_force_three_symbol_words(self):
        def brute_force(word):
            start = SYMBOLS.index(word[0])
            rotated = SYMBOLS[start:] + SYMBOLS[:start]
            indices = [rotated.index(s) for s in word]
            return all(a < b for a, b in zip(indices, indices[1:]))

        for word in product(SYMBOLS, repeat=3):
            self.assertEqual(brute_force(word), is_monotone(list(word)), word)

    def test_midpoints_in_angular_order(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            size = int(rng.integers(1, 8))
            word = [SYMBOLS[k] for k in sorted(rng.choice(12, size=size, replace=False))]
            shift = int(rng.integers(size))
            word = word[shift:] + word[:shift]
            self.assertTrue(is_monotone(word))
            gaps = gap_angles([position(s) * math.pi / 6 for s in word])
            self.assertAlmostEqual(2 * math.pi, sum(gaps), places=9)

    def test_monotone_words(self):
        words = list(monotone_words(4))
        self.assertEqual(12 + 66 + 220 + 495, len(words))
        self.assertTrue(all(is_monotone(w) for w in words))
        self.assertEqual(len(words), len({tuple(w) for w in words}))


class WindingTestCase(RegularTestCase):

    def test_circle(self):
        self.assertEqual(1, winding_number(circle(100)))
        self.assertEqual(-1, winding_number(circle(100, clockwise=True)))

    def test_square_off_origin(self):
        square_xy = [(0.4, -0.1), (0.6, -0.1), (0.6, 0.1), (0.4, 0.1), (0.4, -0.1)]
        self.assertEqual(0, winding_number(polyline_from_xy(square_xy)))

    def test_errors(self):
        with self.assertRaises(ConfigError):
            winding_number(arc(0.5, 0.1, 0.9))
        with self.assertRaises(ConfigError):
            winding_number([DiscPoint(0.5, 1.0), DiscPoint(0.5, 1.0)])
        with self.assertRaises(ConfigError):
            winding_number([DiscPoint(0.0, 1.0), DiscPoint(0.5, 1.0), DiscPoint(0.0, 1.0)])

    def test_embedded_curves(self):
        rng = np.random.default_rng(13)
        thetas = np.linspace(0.0, 2 * math.pi, 300)
        for _ in range(50):
            # star-shaped about the origin
            coefficients = rng.uniform(-0.1, 0.1, size=4)
            r = 0.6 + sum(a * np.cos((k + 1) * thetas + k) for k, a in enumerate(coefficients))
            r[-1] = r[0]
            sign = 1 if rng.random() < 0.5 else -1
            self.assertEqual(sign, winding_number(np.column_stack([r, np.mod(sign * thetas, 2 * math.pi)])))

            # a small loop away from the origin
            cx, cy = rng.uniform(0.3, 0.6), rng.uniform(-0.2, 0.2)
            xy = np.column_stack([cx + 0.1 * np.cos(thetas), cy + 0.1 * np.sin(thetas)])
            xy[-1] = xy[0]
            self.assertEqual(0, winding_number(polyline_from_xy(xy)))

    def test_gap_angles(self):
        np.testing.assert_allclose([math.pi / 2, math.pi / 2, math.pi], gap_angles([0, math.pi / 2, math.pi]))
        np.testing.assert_allclose([math.pi / 2, 3 * math.pi / 2], gap_angles([0, math.pi / 2]))
        self.assertEqual([2 * math.pi], gap_angles([0]))
        self.assertEqual([0.0, 2 * math.pi], gap_angles([1.0, 1.0]))
        points = [DiscPoint(1.0, 0), DiscPoint(1.0, 1.5708)]
        np.testing.assert_allclose([math.pi / 2, 3 * math.pi / 2], gap_angles(points), atol=1e-4)

    def test_gap_angles_out_of_order(self):
        with self.assertRaises(ConfigError):
            gap_angles([0, math.pi, math.pi / 2])

    def test_wd_cost(self):
        self.assertEqual(6, wd_cost(circle(100)))
        self.assertEqual(6, wd_cost(circle(100, clockwise=True)))
        self.assertEqual(0, wd_cost(arc(0.5, 0.1, 0.9)))
        self.assertEqual(1, wd_cost(arc(0.5, 0.9, 1.2)))
        self.assertEqual(1, wd_cost(arc(0.5, 1.2, 0.9)))

    def test_wd_cost_touch_counts_once(self):
        there = arc(0.5, 0.9, math.pi / 3, n=10)
        back = arc(0.5, math.pi / 3, 0.9, n=10)
        self.assertEqual(1, wd_cost(np.vstack([there, back[1:]])))

    def test_optimal_winding_class(self):
        self.assertEqual(WINDING_ZERO, optimal_winding_class([math.pi / 2, 3 * math.pi / 2]))
        self.assertEqual(WINDING_PLUS_MINUS_ONE, optimal_winding_class([math.pi / 2, math.pi / 2, math.pi]))
        self.assertEqual(WINDING_ZERO, optimal_winding_class([2 * math.pi]))

    def test_brute_force_costs(self):
        costs = winding_class_costs([0.1, 0.2])
        self.assertEqual(6, costs[WINDING_PLUS_MINUS_ONE][0])
        self.assertEqual(0, costs[WINDING_ZERO][0])

    def test_brute_force_agrees_on_random_docking_points(self):
        rng = np.random.default_rng(14)
        for _ in range(200):
            size = int(rng.integers(1, 6))
            angles = list(np.sort(rng.uniform(0, 2 * math.pi, size=size)))
            self.assertTrue(brute_force_agrees(angles), angles)

    def test_search_grid_holds_the_docking_angles(self):
        values, index = search_grid([0.05, math.pi / 3, 7.0], math.pi / 90)
        self.assertAlmostEqual(0.05, values[index[0]], places=12)
        self.assertAlmostEqual(math.pi / 3, values[index[1]], places=12)
        self.assertAlmostEqual(7.0 - 2 * math.pi, values[index[2]], places=12)
        self.assertTrue(np.all(np.diff(values) > 1e-9))
        self.assertEqual(6, sum(1 for v in values if abs(v / (math.pi / 3) - round(v / (math.pi / 3))) < 1e-9))

    def test_search_ties_on_opposite_seams(self):
        costs = winding_class_costs([0.0, math.pi])
        self.assertEqual(6, costs[WINDING_PLUS_MINUS_ONE][0])
        self.assertEqual(6, costs[WINDING_ZERO][0])
        self.assertTrue(brute_force_agrees([0.0, math.pi]))

    def test_search_single_docking_point(self):
        cycles = cheapest_cycles([1.0])
        self.assertEqual((0, "stays at the docking point"), cycles[WINDING_ZERO][:2])
        self.assertEqual((6, "forward"), cycles[WINDING_PLUS_MINUS_ONE][:2])

    def test_searched_cycles_have_the_reported_cost_and_winding(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            angles = list(np.sort(rng.uniform(0, 2 * math.pi, size=int(rng.integers(1, 5)))))
            for cls, (cost, description, polyline) in cheapest_cycles(angles).items():
                self.assertEqual(cost, wd_cost(polyline), (angles, description))
                expected = {0} if cls == WINDING_ZERO else {-1, 1}
                self.assertIn(winding_number(polyline), expected, (angles, description))

    def test_search_reverses_the_chord_over_the_long_gap(self):
        cycles = cheapest_cycles([0.1, 0.2, 0.3])
        self.assertEqual((0, "reversed chords 2"), cycles[WINDING_ZERO][:2])


class ProductMetricTestCase(RegularTestCase):

    def test_product_distance(self):
        a = c((1, 0.5), (2, 0.5))
        b = c((1, 0.8), (3, 0.1))
        self.assertAlmostEqual(math.hypot(0.3, 0.6), product_distance(a, b))

    def test_vectorized_matches_scalar(self):
        rng = np.random.default_rng(15)
        configs = [random_square_config(rng) for _ in range(30)] + [c(None, (2, 0.4)), c((1, 0.3), (1, 0.9))]
        matrix = product_distances(config_array(configs), config_array(configs))
        for i, a in enumerate(configs):
            for j, b in enumerate(configs):
                self.assertAlmostEqual(product_distance(a, b), matrix[i, j], places=12)

    def test_distance_to_polyline_projects_in_chart(self):
        polyline = config_array([c((1, 0.2), (2, 0.5)), c((1, 0.8), (2, 0.5))])
        self.assertAlmostEqual(0.1, distance_to_polyline(c((1, 0.5), (2, 0.6)), polyline), places=12)
        self.assertAlmostEqual(math.hypot(0.2, 0.5), distance_to_polyline(c((1, 0.0001), (3, 0.0001)), polyline),
                               places=3)

    def test_polyline_hausdorff(self):
        sparse = config_array([c((1, 0.2), (2, 0.5)), c((1, 0.8), (2, 0.5))])
        dense = config_array([c((1, 0.2), (2, 0.5)), c((1, 0.5), (2, 0.5)), c((1, 0.8), (2, 0.5))])
        self.assertAlmostEqual(0.0, polyline_hausdorff(sparse, dense), places=12)
        self.assertAlmostEqual(0.0, polyline_hausdorff(dense, sparse), places=12)

        shifted = config_array([c((1, 0.2), (2, 0.6)), c((1, 0.9), (2, 0.6))])
        self.assertAlmostEqual(math.hypot(0.1, 0.1), polyline_hausdorff(sparse, shifted), places=12)

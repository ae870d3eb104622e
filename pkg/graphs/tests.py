from unittest import TestCase as RegularTestCase

import numpy as np

from guidepath.exceptions import GraphError, UnknownEdge

from .graph import Graph, make_y_graph, shares_vertex, parse_edge_id
from .points import GraphPoint, CENTER, canonicalize, graph_distance, point


def random_y_point(rng):
    value = rng.uniform(0, 1)
    if rng.uniform() < 0.05:
        return CENTER
    return GraphPoint(int(rng.integers(1, 4)), value)


class YGraphTestCase(RegularTestCase):

    def test_make_y_graph(self):
        g = make_y_graph()
        self.assertEqual(4, len(g.vertices))
        self.assertEqual([1, 2, 3], g.edges)
        for e in g.edges:
            self.assertIn("v0", g.endpoints(e))

    def test_degrees(self):
        g = make_y_graph()
        self.assertEqual(3, g.degree("v0"))
        self.assertEqual(1, g.degree("v1"))

    def test_shares_vertex(self):
        g = make_y_graph()
        self.assertTrue(shares_vertex(g, 1, 2))
        self.assertTrue(shares_vertex(g, 1, 1))

    def test_shares_vertex_on_path(self):
        g = Graph(["a", "b", "c", "d"], [(1, ("a", "b")), (2, ("b", "c")), (3, ("c", "d"))])
        self.assertFalse(shares_vertex(g, 1, 3))
        self.assertTrue(shares_vertex(g, 1, 2))

    def test_shares_vertex_unknown_edge(self):
        with self.assertRaises(UnknownEdge):
            shares_vertex(make_y_graph(), 1, 7)


class GraphConstructionTestCase(RegularTestCase):

    def test_homoclinic_edge_rejected(self):
        with self.assertRaises(GraphError):
            Graph(["a", "b"], [(1, ("a", "b")), (2, ("b", "b"))])

    def test_duplicate_edge_id_rejected(self):
        with self.assertRaises(GraphError):
            Graph(["a", "b", "c"], [(1, ("a", "b")), (1, ("b", "c"))])

    def test_unknown_vertex_rejected(self):
        with self.assertRaises(GraphError):
            Graph(["a", "b"], [(1, ("a", "z"))])

    def test_parallel_edges_allowed(self):
        g = Graph(["a", "b"], [(1, ("a", "b")), (2, ("a", "b"))])
        self.assertTrue(g.shares_vertex(1, 2))
        self.assertEqual(2, g.degree("a"))

    def test_parse_edge_id(self):
        self.assertEqual(3, parse_edge_id("e3"))
        self.assertEqual(3, parse_edge_id("3"))
        self.assertEqual(12, parse_edge_id(12))
        with self.assertRaises(UnknownEdge):
            parse_edge_id("f3")

    def test_dict_round_trip(self):
        g = Graph(["a", "b", "c"], [(1, ("a", "b")), (2, ("b", "c"))])
        g2 = Graph.from_dict(g.to_dict())
        self.assertEqual(g.to_dict(), g2.to_dict())

    def test_line_graph(self):
        g = Graph(["a", "b", "c", "d"], [(1, ("a", "b")), (2, ("b", "c")), (3, ("c", "d"))])
        self.assertEqual([2], g.neighbors(1))
        self.assertEqual([1, 3], g.neighbors(2))


class PointsTestCase(RegularTestCase):

    def test_canonicalize_center(self):
        self.assertEqual(CENTER, canonicalize(GraphPoint(2, 0.0)))

    def test_canonicalize_identity(self):
        self.assertEqual(GraphPoint(1, 0.5), canonicalize(GraphPoint(1, 0.5)))

    def test_canonicalize_out_of_range(self):
        with self.assertRaises(GraphError):
            canonicalize(GraphPoint(3, 1.2))

    def test_canonicalize_idempotent(self):
        for p in [GraphPoint(2, 0.0), GraphPoint(1, 0.5), CENTER, GraphPoint(3, 1.0)]:
            self.assertEqual(canonicalize(p), canonicalize(canonicalize(p)))

    def test_distance_same_edge(self):
        self.assertAlmostEqual(0.5, graph_distance(point(1, 0.3), point(1, 0.8)), places=12)

    def test_distance_through_center(self):
        self.assertAlmostEqual(0.7, graph_distance(point(1, 0.3), point(2, 0.4)), places=12)

    def test_distance_from_center(self):
        self.assertAlmostEqual(0.4, graph_distance(CENTER, point(2, 0.4)), places=12)

    def test_distance_is_a_metric(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            a, b, c = random_y_point(rng), random_y_point(rng), random_y_point(rng)
            self.assertAlmostEqual(graph_distance(a, b), graph_distance(b, a), delta=1e-12)
            self.assertEqual(0.0, graph_distance(a, a))
            self.assertLessEqual(graph_distance(a, c), graph_distance(a, b) + graph_distance(b, c) + 1e-12)
            self.assertLessEqual(graph_distance(a, b), 2.0)

    def test_distance_on_general_graph(self):
        g = Graph(["a", "b", "c", "d"], [(1, ("a", "b")), (2, ("b", "c")), (3, ("c", "d"))])
        # from the middle of edge 1 to the middle of edge 3: half, a full edge, and half again
        self.assertAlmostEqual(2.0, graph_distance(GraphPoint(1, 0.5), GraphPoint(3, 0.5), graph=g), places=12)

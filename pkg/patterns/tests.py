from unittest import TestCase as RegularTestCase

import networkx as nx
import numpy as np

from graphs.graph import Graph, make_y_graph
from guidepath.exceptions import PatternError, UnknownEdge

from .language import is_excursion, m_block_extension
from .levels import build_levels, successor, graph_controller, steps_to_pattern, lock_sequence, g_iterates


def y_plus_isolated_edge():
    return Graph(["v0", "v1", "v2", "v3", "a", "b"],
                 [(1, ("v0", "v1")), (2, ("v0", "v2")), (3, ("v0", "v3")), (4, ("a", "b"))])


def h_graph():
    # two Y's joined by a bridge (edge 7) between junctions j1 and j2
    return Graph(["j1", "j2", "a1", "a2", "b1", "b2"], [
        (1, ("j1", "a1")), (2, ("j1", "a2")),
        (3, ("j2", "b1")), (4, ("j2", "b2")),
        (7, ("j1", "j2")),
    ])


def path_graph(n_edges):
    return Graph(["p%d" % i for i in range(n_edges + 1)],
                 [(i + 1, ("p%d" % i, "p%d" % (i + 1))) for i in range(n_edges)])


def random_graph_and_block(rng):
    n_vertices = int(rng.integers(4, 9))
    n_edges = int(rng.integers(n_vertices - 1, 13))
    nxg = nx.gnm_random_graph(n_vertices, n_edges, seed=int(rng.integers(1 << 30)))
    g = Graph(list(nxg.nodes), [(i + 1, (u, v)) for i, (u, v) in enumerate(nxg.edges)])

    # a random cyclic block without repeats: the edges at one vertex, in random order
    candidates = [v for v in g.vertices if g.degree(v) >= 1]
    v = candidates[int(rng.integers(len(candidates)))]
    incident = list(rng.permutation(g.incident_edges(v)))
    size = int(rng.integers(1, len(incident) + 1))
    return g, [int(e) for e in incident[:size]]


class LanguageTestCase(RegularTestCase):

    def test_is_excursion(self):
        g = make_y_graph()
        self.assertTrue(is_excursion(g, [1, 2, 3]))
        self.assertTrue(is_excursion(g, [1]))

    def test_is_excursion_h_graph(self):
        self.assertFalse(is_excursion(h_graph(), [1, 3]))
        self.assertTrue(is_excursion(h_graph(), [1, 7, 3]))

    def test_is_excursion_unknown_edge(self):
        with self.assertRaises(UnknownEdge):
            is_excursion(make_y_graph(), [1, 9])

    def test_m_block_extension(self):
        self.assertEqual([(1, 2), (2, 1), (1, 2)], m_block_extension([1, 2, 1, 2], 2))
        self.assertEqual([(1,), (2,)], m_block_extension([1, 2], 1))

    def test_m_block_extension_too_short(self):
        with self.assertRaises(PatternError):
            m_block_extension([1], 2)


class LevelsTestCase(RegularTestCase):

    def test_y_two_edge_block(self):
        levels = build_levels(make_y_graph(), [1, 2])
        self.assertEqual(((1, 2), (3,)), levels.levels)
        self.assertEqual(frozenset(), levels.leftover)

    def test_y_full_block(self):
        levels = build_levels(make_y_graph(), [1, 2, 3])
        self.assertEqual(((1, 2, 3),), levels.levels)
        self.assertEqual(0, levels.P)

    def test_leftover(self):
        levels = build_levels(y_plus_isolated_edge(), [1, 2])
        self.assertEqual(frozenset({4}), levels.leftover)

    def test_block_must_be_cyclic(self):
        with self.assertRaises(PatternError):
            build_levels(path_graph(3), [1, 2, 3])

    def test_repeated_block_entries_order_by_first_occurrence(self):
        levels = build_levels(make_y_graph(), [2, 1, 2, 3])
        self.assertEqual(((2, 1, 3),), levels.levels)
        self.assertEqual(1, successor(levels, 2))

    def test_partition(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            g, block = random_graph_and_block(rng)
            levels = build_levels(g, block)
            placed = [e for cell in levels.levels for e in cell]
            self.assertEqual(len(placed), len(set(placed)))
            self.assertEqual(set(g.edges), set(placed) | levels.leftover)
            self.assertEqual(set(block), set(levels.levels[0]))
            for p in range(1, len(levels.levels)):
                for e in levels.levels[p]:
                    self.assertTrue(any(g.shares_vertex(e, f) for f in levels.levels[p - 1]))


class SuccessorTestCase(RegularTestCase):

    def test_successor_on_block(self):
        levels = build_levels(make_y_graph(), [1, 2])
        self.assertEqual(2, successor(levels, 1))
        self.assertEqual(1, successor(levels, 2))

    def test_successor_from_higher_level(self):
        levels = build_levels(make_y_graph(), [1, 2])
        self.assertEqual(1, successor(levels, 3))

    def test_successor_leftover(self):
        levels = build_levels(y_plus_isolated_edge(), [1, 2])
        with self.assertRaises(PatternError):
            successor(levels, 4)

    def test_graph_controller(self):
        levels = build_levels(make_y_graph(), [1, 2])
        G = lambda e: graph_controller(levels, e)  # noqa
        self.assertEqual(1, G(3))
        self.assertEqual(2, G(1))
        self.assertEqual(1, G(G(G(3))))

    def test_steps_to_pattern(self):
        levels = build_levels(make_y_graph(), [1, 2])
        self.assertEqual(1, steps_to_pattern(levels, 3))
        self.assertEqual(0, steps_to_pattern(levels, 1))

    def test_steps_to_pattern_on_chain(self):
        levels = build_levels(path_graph(4), [1, 2])
        self.assertEqual(2, levels.P)
        self.assertEqual(2, steps_to_pattern(levels, 4))
        self.assertEqual([4, 3, 2, 1, 2, 1], lock_sequence(levels, 4))

    def test_steps_to_pattern_leftover(self):
        levels = build_levels(y_plus_isolated_edge(), [1, 2])
        with self.assertRaises(PatternError):
            steps_to_pattern(levels, 4)

    def test_lock_sequence(self):
        levels = build_levels(make_y_graph(), [1, 2])
        self.assertEqual([3, 1, 2, 1, 2], lock_sequence(levels, 3))

    def test_iterates_on_random_graphs(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            g, block = random_graph_and_block(rng)
            levels = build_levels(g, block)
            M = len(block)

            for e in g.edges:
                if e in levels.leftover:
                    continue
                p = levels.level_of[e]
                self.assertEqual(max(p - 1, 0), levels.level_of[graph_controller(levels, e)])
                self.assertLessEqual(steps_to_pattern(levels, e), levels.P)
                self.assertEqual(p, steps_to_pattern(levels, e))

                # once on the block, G walks it in order
                iterates = g_iterates(levels, e, p + 2 * M)
                locked = iterates[p:]
                i = block.index(locked[0])
                self.assertEqual([block[(i + k) % M] for k in range(2 * M)], locked)
